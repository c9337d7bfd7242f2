//! `user,item,rating` files as facility-location instances.
//!
//! Items are the facilities (ground set), users are the customers
//! (realizations). Ratings are divided by the file's largest rating, and a
//! missing `(user, item)` pair has weight 0.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::objectives::FlInstance;

#[derive(Clone, Debug, PartialEq)]
pub struct Ratings {
    pub instance: FlInstance,
    /// Item label of every ground-set index, in first-appearance order.
    pub items: Vec<String>,
    /// User label of every realization, in first-appearance order.
    pub users: Vec<String>,
    pub max_rating: f64,
}

impl Ratings {
    pub fn item_index(&self, label: &str) -> Option<usize> {
        self.items.iter().position(|i| i == label)
    }
}

fn reader(delimiter: u8, data: impl std::io::Read) -> csv::Reader<impl std::io::Read> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(data)
}

fn intern(labels: &mut Vec<String>, index: &mut HashMap<String, usize>, label: &str) -> usize {
    *index.entry(label.to_owned()).or_insert_with(|| {
        labels.push(label.to_owned());
        labels.len() - 1
    })
}

pub fn parse_ratings(data: impl std::io::Read, delimiter: u8) -> Result<Ratings> {
    let mut users = Vec::new();
    let mut items = Vec::new();
    let mut user_idx = HashMap::new();
    let mut item_idx = HashMap::new();
    let mut entries: HashMap<(usize, usize), f64> = HashMap::new();
    let mut order = Vec::new();
    for record in reader(delimiter, data).records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected `user,item,rating`, found {} fields", record.len()),
            });
        }
        let rating: f64 = record[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("rating `{}` is not a number", &record[2]),
        })?;
        if !(rating.is_finite() && rating >= 0.0) {
            return Err(Error::Parse {
                line,
                message: format!("rating {rating} must be finite and nonnegative"),
            });
        }
        let u = intern(&mut users, &mut user_idx, &record[0]);
        let i = intern(&mut items, &mut item_idx, &record[1]);
        if entries.insert((u, i), rating).is_some() {
            log::warn!(
                "line {line}: duplicate rating for user {} item {}, keeping the last one",
                &record[0],
                &record[1]
            );
        } else {
            order.push((u, i));
        }
    }
    if entries.is_empty() {
        return Err(Error::Malformed("ratings file has no entries".into()));
    }
    let max_rating = entries.values().copied().fold(0.0, f64::max);
    if max_rating <= 0.0 {
        return Err(Error::Malformed("all ratings are zero".into()));
    }
    let mut weights = vec![vec![0.0; items.len()]; users.len()];
    for (u, i) in order {
        weights[u][i] = entries[&(u, i)] / max_rating;
    }
    Ok(Ratings {
        instance: FlInstance::new(items.len(), weights)?,
        items,
        users,
        max_rating,
    })
}

pub fn load_ratings(path: &Path, delimiter: u8) -> Result<Ratings> {
    parse_ratings(std::fs::File::open(path)?, delimiter)
}

/// Partition matroid from `item,group` lines with cap `k` per group. Items
/// without a group line share one extra block, also capped at `k`.
pub fn parse_item_groups(
    data: impl std::io::Read,
    delimiter: u8,
    ratings: &Ratings,
    k: usize,
) -> Result<Matroid> {
    let mut group_names: Vec<String> = Vec::new();
    let mut group_idx = HashMap::new();
    let mut group_of = vec![None; ratings.items.len()];
    for record in reader(delimiter, data).records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `item,group`, found {} fields", record.len()),
            });
        }
        let Some(item) = ratings.item_index(&record[0]) else {
            continue;
        };
        let g = intern(&mut group_names, &mut group_idx, &record[1]);
        group_of[item] = Some(g);
    }
    let mut blocks = vec![Vec::new(); group_names.len()];
    let mut rest = Vec::new();
    for (item, g) in group_of.iter().enumerate() {
        match g {
            Some(g) => blocks[*g].push(item),
            None => rest.push(item),
        }
    }
    if !rest.is_empty() {
        blocks.push(rest);
    }
    blocks.retain(|b| !b.is_empty());
    let caps = vec![k; blocks.len()];
    Matroid::partition(ratings.items.len(), blocks, caps)
}

pub fn load_item_groups(path: &Path, delimiter: u8, ratings: &Ratings, k: usize) -> Result<Matroid> {
    parse_item_groups(std::fs::File::open(path)?, delimiter, ratings, k)
}
