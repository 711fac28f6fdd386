use std::sync::Arc;

use rootstat::algebra::Ring;
use rootstat::census::{fq_pair_census, mv_census, zn_root_census, CensusConfig, Stats};
use rootstat::incexc::{b_direct, moment_check, t_vector, SetSystem};
use rootstat::polyring::{Shape, ShapedMultiPoly};

#[test]
fn census_moments_match_inclusion_exclusion() {
    // universe: ordered pairs of monic linear bivariate polynomials over F_2;
    // set y: pairs whose specializations at y share a root
    let q = 2;
    let ring = Ring::finite_field(q).unwrap();
    let shape = Arc::new(Shape::new(2, 1).unwrap());
    let n = shape.population(q).unwrap() as u64;
    let mut sets = vec![Vec::new(); q as usize];
    for i in 0..n {
        let f = ShapedMultiPoly::from_index(&ring, shape.clone(), i as u128);
        for j in 0..n {
            let g = ShapedMultiPoly::from_index(&ring, shape.clone(), j as u128);
            for (y, set) in sets.iter_mut().enumerate() {
                let gcd = f.eval(&[y as u64]).unwrap().gcd(&g.eval(&[y as u64]).unwrap()).unwrap();
                if !gcd.is_one() {
                    set.push((i * n + j) as usize);
                }
            }
        }
    }
    let sys = SetSystem::new((n * n) as usize, sets).unwrap();
    let t = t_vector(&sys);
    let res = fq_pair_census(q, 1, 1, &CensusConfig::default()).unwrap();
    let (s1, s2) = res.moments();
    assert_eq!(s1, t[0] as u128);
    assert_eq!(s2, t[0] as u128 + 2 * t[1] as u128);
    assert_eq!(res.freq, b_direct(&sys));
    assert!(moment_check(&res.freq, &t).passed());
}

#[test]
fn zn_census_worker_independent() {
    let one = zn_root_census(12, 3, &CensusConfig::exhaustive(1)).unwrap();
    let eight = zn_root_census(12, 3, &CensusConfig::exhaustive(8)).unwrap();
    assert_eq!(one.freq, eight.freq);
    assert_eq!(one, eight);
}

#[test]
fn zn_mean_is_one() {
    for n in 2..=9 {
        for m in 1..=4 {
            let res = zn_root_census(n, m, &CensusConfig::default()).unwrap();
            let Stats::Exact { mean, .. } = &res.stats else { unreachable!() };
            assert_eq!(*mean, res.theory_mean, "n={n} m={m}");
            assert!(res.theory_agrees(), "n={n} m={m}");
        }
    }
}

#[test]
fn pair_theory_for_more_shapes() {
    for q in [2, 3, 4, 5] {
        for (n, m) in [(1, 1), (1, 2), (2, 2)] {
            let res = fq_pair_census(q, n, m, &CensusConfig::exhaustive(2)).unwrap();
            assert!(res.theory_agrees(), "q={q} n={n} m={m}");
            assert_ne!(res.resultant_gap_holds(), Some(false));
        }
    }
    for q in [2, 3] {
        let res = fq_pair_census(q, 3, 3, &CensusConfig::exhaustive(2)).unwrap();
        assert!(res.theory_agrees(), "q={q} n=m=3");
    }
}

#[test]
fn two_variables_reduce_to_pairs() {
    let a = fq_pair_census(3, 2, 1, &CensusConfig::default()).unwrap();
    let b = mv_census(3, 2, 2, 1, &CensusConfig::default()).unwrap();
    assert_eq!(a.freq, b.freq);
    assert_eq!((a.theory_mean, a.theory_var), (b.theory_mean, b.theory_var));
}

#[test]
fn stderr_shrinks_with_more_samples() {
    let stderr = |samples, seed| {
        let res = mv_census(3, 3, 1, 1, &CensusConfig::monte_carlo(samples, seed, 2)).unwrap();
        match res.stats {
            Stats::Estimated(e) => e.stderr_mean,
            Stats::Exact { .. } => unreachable!(),
        }
    };
    let (mut small, mut large) = (0.0, 0.0);
    for seed in 0..10 {
        small += stderr(4000, seed);
        large += stderr(8000, seed);
    }
    let ratio = large / small;
    assert!((0.6..=0.82).contains(&ratio), "ratio {ratio}");
}

#[test]
fn monte_carlo_agrees_with_theory() {
    let res = fq_pair_census(5, 2, 2, &CensusConfig::monte_carlo(40_000, 3, 4)).unwrap();
    assert!(res.theory_agrees(), "{:?}", res.stats);
    let text = res.to_json().to_string();
    assert!(text.contains("\"stderr_mean\""));
}

#[test]
fn csv_and_json_agree() {
    let res = fq_pair_census(3, 1, 2, &CensusConfig::default()).unwrap();
    let json = res.to_json();
    let csv = res.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,freq,binomial_ref"));
    for (k, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], k.to_string());
        assert_eq!(cols[1], json["freq"][k].as_str().unwrap());
        let b = &json["binomial_ref"][k];
        let exact = if b["den"] == "1" {
            b["num"].as_str().unwrap().to_string()
        } else {
            format!("{}/{}", b["num"].as_str().unwrap(), b["den"].as_str().unwrap())
        };
        assert_eq!(cols[2], exact);
    }
}
