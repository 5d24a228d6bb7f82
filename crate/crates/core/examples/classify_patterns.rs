//! Classifies small connected negative patterns: a hardness witness or an embedding in a pivot.

use csppat::analysis::{classify_negative_pattern, enumerate_connected_negative, PatternClassification};
use csppat::catalog;
use csppat::model::{CspPattern, Value};

/// A center whose value `i` conflicts with leaf `i`.
fn star(leaves: usize) -> CspPattern {
    let mut b = CspPattern::builder(std::iter::once(leaves).chain(std::iter::repeat_n(1, leaves)).collect());
    for i in 0..leaves {
        b = b.f((0, i as Value), (i + 1, 0));
    }
    b.distinct(&(0..=leaves).collect::<Vec<_>>()).build().unwrap()
}

fn main() {
    let named = [
        ("cycle:3", catalog::cycle(3).unwrap()),
        ("pivot:2", catalog::pivot(2).unwrap()),
        ("neg(negtrans)", catalog::negtrans().neg()),
        ("four-leaf star", star(4)),
    ];
    for (name, chi) in &named {
        match classify_negative_pattern(chi).unwrap() {
            PatternClassification::Intractable { witness, .. } => println!("{name}: intractable via {witness}"),
            PatternClassification::PivotEmbeddable { r, .. } => println!("{name}: embeds in pivot:{r}"),
        }
    }
    let all = enumerate_connected_negative(3, 2).unwrap();
    let easy = all
        .iter()
        .filter(|chi| matches!(classify_negative_pattern(chi), Ok(PatternClassification::PivotEmbeddable { .. })))
        .count();
    println!("{} connected patterns on <= 3 variables and <= 2 values; {easy} embed in a pivot", all.len());
}
