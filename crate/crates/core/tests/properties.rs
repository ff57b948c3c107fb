use proptest::prelude::*;
use zpstab::classifier::{classify_polygon, EdgeClass};
use zpstab::continuous::{bean, classify_chord, ChordClass};
use zpstab::oracle::equivalence::{verify_zp_equivalence, PolygonPair};
use zpstab::oracle::generate::{generate_random_polygon, Style};
use zpstab::stabbing::parity_balance_holds;
use zpstab::{
    point_in_polygon, stab_table, stab_triple, vertex_flags, visibility_oracle, visible_pairs, zp_table, Location, Point,
    Polygon, VisClass,
};

fn polygon(n: usize, seed: u64) -> Polygon {
    generate_random_polygon(n, seed, Style::Generic).expect("generic generation succeeds")
}

fn relabeled(p: &Polygon, shift: usize) -> Polygon {
    let n = p.n();
    Polygon::new((0..n).map(|i| p.vertex((i + shift) % n)).collect()).unwrap()
}

/// Winding number of the ring around `q`; `q` must not lie on it.
fn winding(q: Point, ring: &[Point]) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let side = (b.x - a.x) as i128 * (q.y - a.y) as i128 - (q.x - a.x) as i128 * (b.y - a.y) as i128;
        if a.y <= q.y {
            if b.y > q.y && side > 0 {
                w += 1;
            }
        } else if b.y <= q.y && side < 0 {
            w -= 1;
        }
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reversing_a_pair_swaps_tail_and_head(n in 4usize..16, seed in any::<u64>()) {
        let p = polygon(n, seed);
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    prop_assert_eq!(stab_triple(&p, x, y).reversed(), stab_triple(&p, y, x));
                }
            }
        }
    }

    #[test]
    fn tables_follow_relabeling_and_translation(n in 4usize..14, seed in any::<u64>(), shift in 0usize..14, dx in -1000i64..1000, dy in -1000i64..1000) {
        let p = polygon(n, seed);
        let shift = shift % n;
        let q = relabeled(&p, shift);
        let moved = Polygon::new(p.vertices().iter().map(|v| Point { x: v.x + dx, y: v.y + dy }).collect()).unwrap();
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    let t = stab_triple(&p, (x + shift) % n, (y + shift) % n);
                    prop_assert_eq!(stab_triple(&q, x, y), t);
                    prop_assert_eq!(stab_triple(&moved, x, y), stab_triple(&p, x, y));
                }
            }
        }
    }

    #[test]
    fn classification_follows_relabeling(n in 4usize..14, seed in any::<u64>(), shift in 1usize..14) {
        let p = polygon(n, seed);
        let shift = shift % n;
        let q = relabeled(&p, shift);
        let classes = |p: &Polygon| classify_polygon(p, &zp_table(&stab_table(p)), &vertex_flags(p)).unwrap();
        let (cp, cq) = (classes(&p), classes(&q));
        for c in &cq {
            let (x, y) = ((c.pair.0 + shift) % n, (c.pair.1 + shift) % n);
            let key = (x.min(y), x.max(y));
            let orig = cp.iter().find(|d| d.pair == key).expect("same visible pairs");
            prop_assert_eq!(orig.class, c.class);
        }
    }

    #[test]
    fn parity_balance(n in 3usize..30, seed in any::<u64>()) {
        let p = polygon(n, seed);
        prop_assert!(parity_balance_holds(&p, &stab_table(&p)));
    }

    #[test]
    fn visible_pairs_match_the_oracle(n in 3usize..24, seed in any::<u64>()) {
        let p = polygon(n, seed);
        let vis = visibility_oracle(&p);
        let from_zp = visible_pairs(&zp_table(&stab_table(&p)));
        let mut expected = Vec::new();
        for x in 0..n {
            for y in (x + 1)..n {
                if vis.get(x, y) != VisClass::NotVisible {
                    expected.push((x, y));
                }
            }
        }
        prop_assert_eq!(from_zp, expected);
    }

    #[test]
    fn definite_classes_agree_with_the_oracle(n in 4usize..22, seed in any::<u64>()) {
        let p = polygon(n, seed);
        let vis = visibility_oracle(&p);
        for c in classify_polygon(&p, &zp_table(&stab_table(&p)), &vertex_flags(&p)).unwrap() {
            let truth = vis.get(c.pair.0, c.pair.1);
            match c.class {
                EdgeClass::Internal => prop_assert_eq!(truth, VisClass::Internal),
                EdgeClass::External => prop_assert_eq!(truth, VisClass::External),
                EdgeClass::Boundary => prop_assert_eq!(truth, VisClass::Boundary),
                EdgeClass::Ambiguous => {}
            }
        }
    }

    #[test]
    fn equivalence_is_symmetric(n in 4usize..12, s1 in any::<u64>(), s2 in any::<u64>(), shift in 0usize..12) {
        let a = polygon(n, s1);
        let b = if s1 % 2 == 0 { relabeled(&a, shift % n) } else { polygon(n, s2) };
        let corr: Vec<usize> = if s1 % 2 == 0 { (0..n).map(|i| (i + n - shift % n) % n).collect() } else { (0..n).collect() };
        let pair = PolygonPair::new(a, b, corr).unwrap();
        let (ab, ba) = (verify_zp_equivalence(&pair), verify_zp_equivalence(&pair.swapped()));
        prop_assert_eq!(ab.equal, ba.equal);
        prop_assert_eq!(ab.compared, ba.compared);
        if s1 % 2 == 0 {
            prop_assert!(ab.equal);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn point_location_matches_winding_number(n in 3usize..20, seed in any::<u64>(), fx in 0.0f64..1.0, fy in 0.0f64..1.0) {
        let p = polygon(n, seed);
        let (xs, ys): (Vec<i64>, Vec<i64>) = p.vertices().iter().map(|v| (v.x, v.y)).unzip();
        let pick = |v: &[i64], f: f64| {
            let (lo, hi) = (v.iter().min().unwrap() - 1, v.iter().max().unwrap() + 1);
            lo + (f * (hi - lo) as f64) as i64
        };
        let q = Point { x: pick(&xs, fx), y: pick(&ys, fy) };
        let loc = point_in_polygon(q, &p);
        if loc != Location::OnBoundary {
            let inside = winding(q, p.vertices()) != 0;
            prop_assert_eq!(loc == Location::Inside, inside);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chord_classes_are_stable_under_doubling(i in 0usize..400, j in 0usize..400) {
        let (coarse, fine) = (bean(400), bean(800));
        prop_assert!((coarse.points()[i][0] - fine.points()[2 * i][0]).abs() < 1e-9);
        if let (Ok(a), Ok(b)) = (classify_chord(&coarse, i, j), classify_chord(&fine, 2 * i, 2 * j)) {
            if a.class != ChordClass::Unclassifiable && b.class != ChordClass::Unclassifiable {
                prop_assert_eq!(a.class, b.class, "chord ({}, {})", i, j);
            }
        }
    }
}
