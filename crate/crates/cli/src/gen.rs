use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Subcommand, ValueEnum};
use scg_core::dataio::{
    self, bipartite_matroid, gen_bipartite_powerlaw, gen_ic_cascades, random, ratings, zkc,
    BipartiteSpec, DiGraph, InstanceFile,
};
use scg_core::objectives::ImInstance;
use scg_core::rng::{seeded_rng, stream_rng};
use scg_core::{Error, Matroid, MatroidSpec, Objective};

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: GenFamily,
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Influence maximization on ZKC, a synthetic bipartite graph or an edge list.
    Im(ImArgs),
    /// Random multi-subject summarization instance.
    Sm(SmArgs),
    /// Facility location from a ratings file, or random.
    Fl(FlArgs),
    /// Random line cache network.
    Cn(CnArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Number of equal partition blocks (uniform matroid when omitted).
    #[arg(long)]
    pub partitions: Option<usize>,
    /// Cap per block, or the uniform rank.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (`-` for standard output).
    #[arg(long, short, default_value = "instance.json")]
    pub out: PathBuf,
}

impl Common {
    fn matroid(&self, n: usize) -> Result<Matroid, Error> {
        match self.partitions {
            Some(m) => Matroid::equal_blocks(n, m, self.k),
            None => Ok(Matroid::uniform(n, self.k)),
        }
    }
}

#[derive(Debug, Args)]
pub struct ImArgs {
    /// Zachary karate club (34 nodes, 78 undirected edges).
    #[arg(long, conflicts_with_all = ["bipartite", "edges"])]
    pub zkc: bool,
    /// Directed bipartite graph V1 -> V2.
    #[arg(long, conflicts_with = "edges")]
    pub bipartite: bool,
    /// Edge list file with `u v` lines.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Treat the edge list as undirected.
    #[arg(long, requires = "edges")]
    pub undirected: bool,
    /// Total node count of the bipartite graph.
    #[arg(long, default_value_t = 400)]
    pub nodes: usize,
    /// Power-law degrees (uniform degrees otherwise).
    #[arg(long)]
    pub powerlaw: bool,
    #[arg(long, default_value_t = dataio::generate::DEFAULT_POWERLAW_EXPONENT)]
    pub exponent: f64,
    #[arg(long, default_value_t = 20)]
    pub cascades: usize,
    /// Edge probability of the independent cascade model.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Store the graph and simulate cascades on demand.
    #[arg(long)]
    pub generative: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SmArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Number of subject partitions.
    #[arg(long, default_value_t = 2)]
    pub subjects: usize,
    #[arg(long, default_value_t = 20)]
    pub realizations: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Delimiter {
    Comma,
    Tab,
}

impl Delimiter {
    fn byte(self) -> u8 {
        match self {
            Delimiter::Comma => b',',
            Delimiter::Tab => b'\t',
        }
    }
}

#[derive(Debug, Args)]
pub struct FlArgs {
    /// `user,item,rating` file; a random instance is drawn when omitted.
    #[arg(long)]
    pub ratings: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Delimiter::Comma)]
    pub delimiter: Delimiter,
    /// `item,group` file defining the partition blocks (e.g. genres).
    #[arg(long, requires = "ratings")]
    pub groups: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub customers: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CnArgs {
    #[arg(long, default_value_t = 4)]
    pub nodes: usize,
    #[arg(long, default_value_t = 2)]
    pub catalogue: usize,
    #[arg(long, default_value_t = 6)]
    pub requests: usize,
    /// Largest empty-cache edge load, in (0, 1).
    #[arg(long, default_value_t = 0.8)]
    pub s_bar: f64,
    #[command(flatten)]
    pub common: Common,
}

pub fn cmd_gen(args: &GenArgs) -> anyhow::Result<()> {
    let (instance, common) = build(args)?;
    crate::emit(Some(&common.out), &instance.to_json_string())?;
    let summary = summary(&instance);
    if common.out.as_os_str() == "-" {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    Ok(())
}

pub fn build(args: &GenArgs) -> anyhow::Result<(InstanceFile, &Common)> {
    match &args.family {
        GenFamily::Im(a) => Ok((gen_im(a)?, &a.common)),
        GenFamily::Sm(a) => {
            let mut rng = stream_rng(a.common.seed, "gen-sm", 0);
            let obj = random::random_sm(&mut rng, a.n, a.subjects, a.realizations)?;
            let m = a.common.matroid(a.n)?;
            Ok((InstanceFile::new(obj, m)?.with_meta("generator", "random-sm"), &a.common))
        }
        GenFamily::Fl(a) => Ok((gen_fl(a)?, &a.common)),
        GenFamily::Cn(a) => {
            if !(a.s_bar > 0.0 && a.s_bar < 1.0) {
                return Err(Error::Config(format!("--s-bar {} outside (0, 1)", a.s_bar)).into());
            }
            if a.nodes < 2 || a.catalogue == 0 {
                return Err(Error::Config("cache network needs 2+ nodes and 1+ items".into()).into());
            }
            let mut rng = stream_rng(a.common.seed, "gen-cn", 0);
            let obj = random::random_cn(&mut rng, a.nodes, a.catalogue, a.requests, a.s_bar)?;
            let m = a.common.matroid(obj.ground_size())?;
            Ok((InstanceFile::new(obj, m)?.with_meta("generator", "random-cn"), &a.common))
        }
    }
}

fn gen_im(a: &ImArgs) -> anyhow::Result<InstanceFile> {
    if !(0.0..=1.0).contains(&a.p) {
        return Err(Error::Config(format!("--p {} outside [0, 1]", a.p)).into());
    }
    if a.cascades == 0 && !a.generative {
        return Err(Error::Config("--cascades must be at least 1".into()).into());
    }
    let (graph, matroid, source) = if a.zkc {
        let m = match a.common.partitions {
            Some(2) => zkc::zkc_club_matroid(a.common.k)?,
            _ => a.common.matroid(zkc::ZKC_NODES)?,
        };
        (zkc::zkc_graph(), m, "zkc".to_string())
    } else if a.bipartite {
        let exponent = if a.powerlaw { a.exponent } else { 0.0 };
        let spec = BipartiteSpec {
            nodes: a.nodes,
            exponent,
            seed: a.common.seed,
        };
        let graph = gen_bipartite_powerlaw(&spec)?;
        let m = bipartite_matroid(a.nodes, a.common.partitions.unwrap_or(1), a.common.k)?;
        (graph, m, format!("bipartite exponent={exponent}"))
    } else if let Some(path) = &a.edges {
        let (nodes, edges) = dataio::graph::read_edge_list(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let graph = if a.undirected {
            DiGraph::from_undirected(nodes, &edges)?
        } else {
            DiGraph::new(nodes, edges)?
        };
        let m = a.common.matroid(nodes)?;
        (graph, m, path.display().to_string())
    } else {
        return Err(Error::Config("choose one of --zkc, --bipartite or --edges".into()).into());
    };
    let edge_count = graph.edge_count();
    let im = if a.generative {
        ImInstance::generative(graph, a.p)?
    } else {
        let cascades = gen_ic_cascades(&graph, a.p, a.cascades, a.common.seed);
        ImInstance::new(graph.nodes(), cascades)?
    };
    Ok(InstanceFile::new(Objective::Im(im), matroid)?
        .with_meta("graph", source)
        .with_meta("edges", edge_count)
        .with_meta("p", a.p)
        .with_meta("seed", a.common.seed))
}

fn gen_fl(a: &FlArgs) -> anyhow::Result<InstanceFile> {
    match &a.ratings {
        Some(path) => {
            let r = ratings::load_ratings(path, a.delimiter.byte())
                .with_context(|| format!("loading {}", path.display()))?;
            let m = match &a.groups {
                Some(g) => ratings::load_item_groups(g, a.delimiter.byte(), &r, a.common.k)
                    .with_context(|| format!("loading {}", g.display()))?,
                None => a.common.matroid(r.items.len())?,
            };
            let users = r.users.len();
            Ok(InstanceFile::new(Objective::Fl(r.instance), m)?
                .with_meta("ratings", path.display().to_string())
                .with_meta("users", users)
                .with_meta("max_rating", r.max_rating))
        }
        None => {
            let mut rng = seeded_rng(a.common.seed);
            let obj = random::random_fl(&mut rng, a.n, a.customers, 0.3)?;
            let m = a.common.matroid(a.n)?;
            Ok(InstanceFile::new(obj, m)?.with_meta("generator", "random-fl"))
        }
    }
}

/// One-line description: family, ground size, realizations, matroid.
pub fn summary(instance: &InstanceFile) -> String {
    let obj = &instance.objective;
    let z = if obj.is_generative() {
        "generative".to_string()
    } else {
        obj.stored_count().to_string()
    };
    let m = &instance.matroid;
    let matroid = match m.spec() {
        MatroidSpec::Uniform { k } => format!("uniform k={k}"),
        MatroidSpec::Partition { blocks, caps } => {
            format!("partition blocks={} caps={caps:?}", blocks.len())
        }
    };
    format!(
        "family={} n={} |z|={} matroid={} rank={}",
        obj.family(),
        obj.ground_size(),
        z,
        matroid,
        m.rank()
    )
}
