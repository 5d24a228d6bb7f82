//! Every named pattern with its size, and which of them occur in which.

use csppat::catalog::NamedPattern;
use csppat::model::TruthValue;
use csppat::occurrence::occurs;

fn main() {
    let names = [
        NamedPattern::Simple,
        NamedPattern::Max2,
        NamedPattern::Tree,
        NamedPattern::Btp,
        NamedPattern::Negtrans,
        NamedPattern::Cycle(3),
        NamedPattern::Valency,
        NamedPattern::Path,
        NamedPattern::ValencyPath,
        NamedPattern::Pivot(1),
        NamedPattern::SepPivot(2),
    ];
    for name in names {
        let chi = name.build().unwrap();
        println!(
            "{name}: {} vars, {} F, {} T, flat={}",
            chi.num_vars(),
            chi.count_entries(TruthValue::False),
            chi.count_entries(TruthValue::True),
            chi.is_flat()
        );
    }
    println!();
    for a in names {
        let inside: Vec<String> = names
            .iter()
            .filter(|&&b| a != b && matches!(occurs(&a.build().unwrap(), &b.build().unwrap()), Ok(Some(_))))
            .map(|b| b.to_string())
            .collect();
        println!("{a} occurs in: {}", if inside.is_empty() { "-".into() } else { inside.join(", ") });
    }
}
