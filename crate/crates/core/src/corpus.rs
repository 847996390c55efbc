//! Named sample groupoids and covers used by the verification sweeps.

use crate::error::Result;
use crate::groupoid::FiniteGroupoid;
use crate::mv::MvDecomposition;

/// Unit groupoids on up to 3 points, cyclic groups of order up to 6, pair
/// groupoids on up to 3 points, one action groupoid and two disjoint unions.
pub fn standard_corpus() -> Vec<(String, FiniteGroupoid)> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push((format!("units:{k}"), FiniteGroupoid::units(k)));
    }
    for m in 1..=6 {
        out.push((format!("cyclic:{m}"), FiniteGroupoid::one_object_cyclic(m).expect("m ≥ 1")));
    }
    for k in 1..=3 {
        out.push((format!("pair:{k}"), FiniteGroupoid::pair(k)));
    }
    out.push(("action:2:1,0,2".into(), FiniteGroupoid::action(2, &[1, 0, 2]).expect("involution")));
    let c2 = FiniteGroupoid::one_object_cyclic(2).expect("m ≥ 1");
    let c3 = FiniteGroupoid::one_object_cyclic(3).expect("m ≥ 1");
    out.push(("union:cyclic:2,cyclic:3".into(), FiniteGroupoid::disjoint_union(&c2, &c3)));
    out.push((
        "union:units:1,pair:2".into(),
        FiniteGroupoid::disjoint_union(&FiniteGroupoid::units(1), &FiniteGroupoid::pair(2)),
    ));
    out
}

/// `A ⊔ B ⊔ C` with `U1` the units of `A ⊔ B` and `U2` those of `B ⊔ C`.
pub fn three_orbit_cover(a: &FiniteGroupoid, b: &FiniteGroupoid, c: &FiniteGroupoid) -> Result<MvDecomposition> {
    let g = FiniteGroupoid::disjoint_union(&FiniteGroupoid::disjoint_union(a, b), c);
    let (na, nb, nc) = (a.unit_arrows().len(), b.unit_arrows().len(), c.unit_arrows().len());
    let u1: Vec<usize> = (0..na + nb).collect();
    let u2: Vec<usize> = (na..na + nb + nc).collect();
    MvDecomposition::from_positions(&g, &u1, &u2)
}

/// Seven three-orbit covers built from small presets.
pub fn standard_covers() -> Vec<(String, MvDecomposition)> {
    let c = |m| FiniteGroupoid::one_object_cyclic(m).expect("m ≥ 1");
    let u1 = FiniteGroupoid::units(1);
    let p2 = FiniteGroupoid::pair(2);
    let p3 = FiniteGroupoid::pair(3);
    let free = FiniteGroupoid::action(2, &[1, 0]).expect("involution");
    let rot = FiniteGroupoid::action(4, &[1, 2, 3, 0]).expect("4-cycle");
    let triples = [
        ("cyclic:2 | pair:2 | cyclic:3", c(2), p2.clone(), c(3)),
        ("units:1 | cyclic:2 | units:1", u1.clone(), c(2), u1.clone()),
        ("cyclic:3 | cyclic:4 | pair:2", c(3), c(4), p2.clone()),
        ("pair:3 | units:1 | cyclic:2", p3, u1.clone(), c(2)),
        ("action:2:1,0 | cyclic:2 | cyclic:2", free, c(2), c(2)),
        ("cyclic:4 | units:1 | cyclic:5", c(4), u1, c(5)),
        ("cyclic:2 | action:4:1,2,3,0 | pair:2", c(2), rot, p2),
    ];
    triples
        .into_iter()
        .map(|(name, a, b, cc)| (name.to_string(), three_orbit_cover(&a, &b, &cc).expect("saturated cover")))
        .collect()
}
