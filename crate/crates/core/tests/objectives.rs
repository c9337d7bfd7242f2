mod common;

use common::*;
use rand::Rng;
use scg_core::dataio::{gen_ic_cascades, zkc};
use scg_core::objectives::taylor::{geometric_bias_bound, log1p_bias_bound};
use scg_core::objectives::{
    Cascade, CnEdge, CnInstance, CnRequest, FlInstance, ImInstance, SmInstance,
};
use scg_core::rng::seeded_rng;
use scg_core::{Link, Objective, Realization, ScalarTaylor, DEFAULT_TERM_BUDGET};

/// Inner values computed from the raw instance data.
fn direct_inner(z: &Realization<'_>, x: &[bool]) -> Vec<f64> {
    let idx = z.id() as usize;
    match z.objective() {
        Objective::Sm(sm) => sm
            .partitions()
            .iter()
            .map(|p| p.iter().filter(|&&i| x[i]).map(|&i| sm.values()[idx][i]).sum())
            .collect(),
        Objective::Im(im) => {
            let c = &im.cascades()[idx];
            let hit = (0..im.nodes())
                .filter(|&v| c.reach[v].iter().any(|&u| x[u]))
                .count();
            vec![hit as f64 / im.nodes() as f64]
        }
        Objective::Fl(fl) => {
            let w = fl.customers()[idx].weights();
            vec![(0..w.len()).filter(|&i| x[i]).map(|i| w[i]).fold(0.0, f64::max)]
        }
        Objective::Cn(cn) => {
            let edge = &cn.edges()[idx];
            let mut load = 0.0;
            for r in cn.requests() {
                for k in 0..r.path.len() - 1 {
                    if (r.path[k + 1], r.path[k]) != (edge.u, edge.v) {
                        continue;
                    }
                    let served = r.path[..=k]
                        .iter()
                        .any(|&node| x[node * cn.catalogue() + r.item]);
                    if !served {
                        load += r.rate / edge.mu;
                    }
                }
            }
            vec![load]
        }
    }
}

fn direct_value(z: &Realization<'_>, x: &[bool]) -> f64 {
    let inner = direct_inner(z, x);
    match z.objective() {
        Objective::Cn(_) => {
            let empty = direct_inner(z, &vec![false; x.len()])[0];
            Link::Geometric.apply(empty) - Link::Geometric.apply(inner[0])
        }
        _ => inner.iter().map(|g| g.ln_1p()).sum(),
    }
}

#[test]
fn inner_polys_match_direct_values() {
    let mut rng = seeded_rng(300);
    for family in FAMILIES {
        for _ in 0..10 {
            let obj = random_instance(&mut rng, family, 4);
            let n = obj.ground_size();
            for z in obj.realizations() {
                let polys = z.inner_polys();
                for mask in 0..1usize << n {
                    let x = bits(mask, n);
                    let direct = direct_inner(&z, &x);
                    assert_eq!(polys.len(), direct.len());
                    for (p, d) in polys.iter().zip(&direct) {
                        assert!((p.evaluate_binary(&x).unwrap() - d).abs() <= 1e-12, "{family}");
                    }
                    for (a, d) in z.inner_values(&x).iter().zip(&direct) {
                        assert!((a - d).abs() <= 1e-12);
                    }
                    assert!((z.f_eval(&x).unwrap() - direct_value(&z, &x)).abs() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn monotone_and_submodular() {
    let mut rng = seeded_rng(301);
    for family in FAMILIES {
        let obj = random_instance(&mut rng, family, 5);
        let n = obj.ground_size();
        for _ in 0..200 {
            let z = obj.sample_z(&mut rng).unwrap();
            let small: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.3)).collect();
            let large: Vec<bool> = small.iter().map(|&s| s || rng.gen_bool(0.3)).collect();
            let i = rng.gen_range(0..n);
            let gain = |x: &[bool]| {
                let mut with = x.to_vec();
                with[i] = true;
                let mut without = x.to_vec();
                without[i] = false;
                z.f_eval(&with).unwrap() - z.f_eval(&without).unwrap()
            };
            assert!(gain(&small) >= -1e-12, "{family} not monotone");
            assert!(gain(&small) >= gain(&large) - 1e-12, "{family} not submodular");
        }
    }
}

#[test]
fn worked_values() {
    let fl = Objective::Fl(FlInstance::new(2, vec![vec![0.9, 0.4]]).unwrap());
    let z = fl.realization(0).unwrap();
    assert!((z.f_eval(&[false, true]).unwrap() - 0.4f64.ln_1p()).abs() < 1e-15);
    assert!((z.inner_values(&[false, true])[0] - 0.4).abs() < 1e-15);

    let cn = single_edge_cn();
    let z = cn.realization(0).unwrap();
    assert!((z.f_eval(&[true, false]).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(z.f_eval(&[false, false]).unwrap(), 0.0);
}

fn single_edge_cn() -> Objective {
    Objective::Cn(
        CnInstance::new(
            2,
            1,
            vec![CnEdge { u: 1, v: 0, mu: 1.0 }],
            vec![CnRequest {
                item: 0,
                path: vec![0, 1],
                rate: 0.5,
            }],
        )
        .unwrap(),
    )
}

#[test]
fn scalar_taylor_grid_bounds() {
    for degree in 0..=8 {
        let t = ScalarTaylor::new(Link::Log1p, degree).unwrap();
        let worst = (0..=1000)
            .map(|k| k as f64 / 1000.0)
            .map(|s| (s.ln_1p() - t.eval(s)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= log1p_bias_bound(degree), "L={degree}: {worst}");
    }
    let t0 = ScalarTaylor::new(Link::Log1p, 0).unwrap();
    assert!((t0.eval(0.9) - 1.5f64.ln()).abs() < 1e-15);
    let t1 = ScalarTaylor::new(Link::Log1p, 1).unwrap();
    assert!((t1.coeffs()[1] - 2.0 / 3.0).abs() < 1e-15);
    let g2 = ScalarTaylor::new(Link::Geometric, 2).unwrap();
    assert!((g2.eval(0.5) - 0.75).abs() < 1e-15);
}

#[test]
fn geometric_remainder_identity() {
    for degree in 1..=8 {
        let t = ScalarTaylor::new(Link::Geometric, degree).unwrap();
        for k in 0..=95 {
            let s = k as f64 / 100.0;
            let remainder = s / (1.0 - s) - t.eval(s);
            let exact = s.powi(degree as i32 + 1) / (1.0 - s);
            assert!((remainder - exact).abs() <= 1e-12, "L={degree} s={s}");
        }
    }
}

#[test]
fn compose_single_node_cascade() {
    let im = Objective::Im(
        ImInstance::new(1, vec![Cascade { reach: vec![vec![0]] }]).unwrap(),
    );
    let z = im.realization(0).unwrap();
    let fhat = z.compose_fhat(1, DEFAULT_TERM_BUDGET).unwrap();
    let at_one = fhat.evaluate_binary(&[true]).unwrap();
    assert!((at_one - (1.5f64.ln() + 1.0 / 3.0)).abs() < 1e-12);
    assert!((at_one - 2f64.ln()).abs() <= 1.0 / 8.0);
}

#[test]
fn sm_surrogate_error_within_bound() {
    let mut rng = seeded_rng(302);
    for _ in 0..20 {
        let n = rng.gen_range(2..=10);
        let obj = scg_core::dataio::random::random_sm(&mut rng, n, 1, 3).unwrap();
        for degree in [1, 2] {
            for z in obj.realizations() {
                let fhat = z.compose_fhat(degree, DEFAULT_TERM_BUDGET).unwrap();
                for mask in 0..1usize << n {
                    let x = bits(mask, n);
                    let err = (z.f_eval(&x).unwrap() - fhat.evaluate_binary(&x).unwrap()).abs();
                    assert!(err <= log1p_bias_bound(degree) + 1e-12);
                }
            }
        }
    }
}

#[test]
fn cn_remainder_at_empty_cache() {
    let cn = single_edge_cn();
    let z = cn.realization(0).unwrap();
    for degree in 1..=6 {
        let fhat = z.compose_fhat(degree, DEFAULT_TERM_BUDGET).unwrap();
        let err = (fhat.evaluate_binary(&[false, false]).unwrap() - z.f_eval(&[false, false]).unwrap()).abs();
        assert!((err - geometric_bias_bound(degree, 0.5)).abs() <= 1e-12);
        assert!((err - 0.5f64.powi(degree as i32 + 1) / 0.5).abs() <= 1e-12);
    }
}

#[test]
fn sm_rejects_values_off_simplex() {
    assert!(SmInstance::new(2, vec![vec![0, 1]], vec![vec![0.5, 0.4]]).is_err());
}

#[test]
fn sample_z_is_uniform_over_store() {
    let cascades = gen_ic_cascades(&zkc::zkc_graph(), 0.5, 20, 7);
    let obj = Objective::Im(ImInstance::new(zkc::ZKC_NODES, cascades).unwrap());
    let mut rng = seeded_rng(303);
    let draws = 10_000;
    let mut counts = [0usize; 20];
    for _ in 0..draws {
        counts[obj.sample_z(&mut rng).unwrap().id() as usize] += 1;
    }
    let p = 1.0 / 20.0;
    let sigma = (p * (1.0 - p) / draws as f64).sqrt();
    for c in counts {
        assert!((c as f64 / draws as f64 - p).abs() <= 3.0 * sigma);
    }
}

#[test]
fn generative_realizations_are_deterministic() {
    let obj = Objective::Im(ImInstance::generative(zkc::zkc_graph(), 0.3).unwrap());
    assert!(obj.is_generative());
    let x: Vec<bool> = (0..zkc::ZKC_NODES).map(|i| i % 5 == 0).collect();
    for seed in 0..10 {
        let a = obj.generated_realization(seed).unwrap();
        let b = obj.generated_realization(seed).unwrap();
        assert_eq!(a.f_eval(&x).unwrap(), b.f_eval(&x).unwrap());
        assert_eq!(
            a.inner_polys()[0].to_text(),
            b.inner_polys()[0].to_text()
        );
    }
}
