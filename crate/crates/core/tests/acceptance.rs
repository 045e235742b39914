//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use wtcensus::census::{
    a_rec, asymptotic_ratio, b_explicit, b_row, brute_force_passport_census, c_exact, catalan,
    ordinary_rooted_count, ordinary_unrooted_mass,
};
use wtcensus::dyck::{enumerate_words, enumerate_words_with_edges, parse_text};
use wtcensus::oeis::{compare, parse_bfile, Comparison, BUNDLED_A002212};
use wtcensus::series::{f_series, h_closed_form, h_fixed_point, h_series};
use wtcensus::tree::{unrooted_census, RootedTree};
use wtcensus::{BigInt, BigRational, BigUint, IntegerBivariate, RationalSeries};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn biguints(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn census_mass(n: usize) -> BigRational {
    unrooted_census(n)
        .iter()
        .fold(BigRational::zero(), |acc, c| {
            acc + BigRational::new(BigInt::one(), BigInt::from(c.aut_order))
        })
}

fn sequence_prefix() -> Check {
    let expected = biguints(&[1, 1, 3, 10, 36, 137, 543, 2219, 9285]);
    let recurrence = a_rec(8);
    ensure(recurrence == expected, || {
        format!("recurrence gave {recurrence:?}")
    })?;
    let series: RationalSeries = f_series(8);
    let series: Vec<BigUint> = series
        .integer_coeffs()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|c| c.to_biguint().expect("nonnegative"))
        .collect();
    ensure(series == expected, || format!("series gave {series:?}"))?;
    let counted: Vec<BigUint> = (0..=8)
        .map(|n| BigUint::from(enumerate_words(n).count()))
        .collect();
    ensure(counted == expected, || {
        format!("enumeration gave {counted:?}")
    })?;
    Ok("1 1 3 10 36 137 543 2219 9285 by recurrence, series and enumeration".into())
}

fn edge_refined_counts() -> Check {
    let h = h_series(4).map_err(|e| e.to_string())?;
    for (n, row) in [(3usize, vec![1u64, 4, 5]), (4, vec![1, 6, 15, 14])] {
        let expected = biguints(&row);
        ensure(b_row(n) == expected, || {
            format!("formula row {n}: {:?}", b_row(n))
        })?;
        let slice: Vec<BigUint> = (1..=n)
            .map(|m| h.coeff(m, n).to_biguint().expect("nonnegative"))
            .collect();
        ensure(slice == expected, || format!("series row {n}: {slice:?}"))?;
        let filtered: Vec<BigUint> = (1..=n)
            .map(|m| BigUint::from(enumerate_words_with_edges(n, m).count()))
            .collect();
        ensure(filtered == expected, || {
            format!("enumeration row {n}: {filtered:?}")
        })?;
    }
    Ok("n=3: 1 4 5, n=4: 1 6 15 14 by formula, series and enumeration".into())
}

fn weight_four_example() -> Check {
    let classes = unrooted_census(4);
    let rooted: usize = classes.iter().map(|c| c.rooted_count()).sum();
    ensure(rooted == 36, || format!("rooted total {rooted}"))?;
    ensure(enumerate_words(4).count() == 36, || {
        "enumeration total".into()
    })?;
    ensure(classes.len() == 16, || format!("{} classes", classes.len()))?;
    let mut profile = BTreeMap::new();
    for c in &classes {
        *profile.entry(c.aut_order).or_insert(0) += 1;
    }
    ensure(profile == BTreeMap::from([(1, 10), (2, 4), (4, 2)]), || {
        format!("profile {profile:?}")
    })?;
    let half = BigRational::new(BigInt::from(25), BigInt::from(2));
    let formula = c_exact(4).map_err(|e| e.to_string())?;
    ensure(formula == half, || format!("c_4 formula {formula}"))?;
    let mass = census_mass(4);
    ensure(mass == half, || format!("c_4 census {mass}"))?;
    Ok("36 rooted, 16 classes {aut 1: 10, aut 2: 4, aut 4: 2}, c_4 = 25/2 both ways".into())
}

fn brute_force_concordance() -> Check {
    let a = a_rec(8);
    let mut total = 0;
    for n in 0..=8 {
        let mut by_edges = vec![0usize; n + 1];
        for w in enumerate_words(n) {
            by_edges[w.edge_count()] += 1;
        }
        let count: usize = by_edges.iter().sum();
        total += count;
        ensure(BigUint::from(count) == a[n], || {
            format!("a_{n}: {count} vs {}", a[n])
        })?;
        for m in 1..=n {
            let b = b_explicit(m, n).map_err(|e| e.to_string())?;
            ensure(BigUint::from(by_edges[m]) == b, || {
                format!("b({m},{n}): {} vs {b}", by_edges[m])
            })?;
        }
        if n >= 1 {
            let c = c_exact(n).map_err(|e| e.to_string())?;
            let mass = census_mass(n);
            ensure(c == mass, || format!("c_{n}: {c} vs census {mass}"))?;
        }
    }
    Ok(format!("n <= 8: {total} words, all a_n, b_mn, c_n agree"))
}

fn passport_theorem() -> Check {
    let mut passports = 0;
    for n in 1..=7 {
        let census = brute_force_passport_census(n);
        let mut total = BigUint::zero();
        for (passport, tally) in &census {
            passports += 1;
            let rooted = ordinary_rooted_count(passport).map_err(|e| e.to_string())?;
            ensure(rooted == BigUint::from(tally.rooted), || {
                format!("{passport}: n N N = {rooted}, brute force {}", tally.rooted)
            })?;
            let mass = ordinary_unrooted_mass(passport).map_err(|e| e.to_string())?;
            ensure(mass == tally.mass, || {
                format!("{passport}: N N = {mass}, brute force {}", tally.mass)
            })?;
            total += rooted;
        }
        ensure(total == catalan(n), || {
            format!("n = {n}: total {total} vs Cat_{n}")
        })?;
    }
    Ok(format!("{passports} passports for n <= 7, totals = Cat_n"))
}

fn functional_equation() -> Check {
    let order = 32;
    let closed = h_closed_form::<BigRational>(order)
        .to_integers()
        .map_err(|e| e.to_string())?;
    let fixed: IntegerBivariate = h_fixed_point(order);
    for n in 0..=order {
        ensure(closed.slice(n) == fixed.slice(n), || {
            format!("t^{n} slices differ")
        })?;
    }
    let at_one = h_closed_form::<BigRational>(order).at_s(&BigRational::one());
    let f: RationalSeries = f_series(order);
    ensure(at_one == f, || "h(1,t) != f(t)".into())?;
    Ok(format!(
        "fixed point = closed form and h(1,t) = f(t) through t^{order}"
    ))
}

fn asymptotics() -> Check {
    let a = a_rec(400);
    let checkpoints = [50usize, 100, 200, 400];
    let ratios: Vec<f64> = checkpoints
        .iter()
        .map(|&n| asymptotic_ratio(n, &a[n]).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(ratios.windows(2).all(|w| w[0] < w[1]), || {
        format!("ratios not increasing: {ratios:?}")
    })?;
    let last = ratios[3];
    ensure(last > 0.9 && last < 1.0, || format!("ratio(400) = {last}"))?;
    Ok(format!(
        "ratios at 50/100/200/400: {:.5} {:.5} {:.5} {:.5}",
        ratios[0], ratios[1], ratios[2], ratios[3]
    ))
}

fn codec_round_trip() -> Check {
    let mut words = 0;
    for n in 0..=8 {
        for w in enumerate_words(n) {
            words += 1;
            let text = w.to_string();
            let parsed = parse_text(&text).map_err(|e| format!("{text:?}: {e}"))?;
            ensure(parsed == w, || {
                format!("text round trip failed for {text:?}")
            })?;
            let tree = RootedTree::from_dyck(&w);
            ensure(tree.to_dyck() == w, || {
                format!("tree round trip failed for {text:?}")
            })?;
            let rebuilt = RootedTree::from_node(&tree.to_node()).map_err(|e| e.to_string())?;
            ensure(rebuilt == tree, || {
                format!("node round trip failed for {text:?}")
            })?;
        }
    }
    Ok(format!("{words} words, zero failures"))
}

fn oeis_fixture() -> Check {
    let rows = parse_bfile(BUNDLED_A002212).map_err(|e| e.to_string())?;
    match compare(&rows, &a_rec(30)).map_err(|e| e.to_string())? {
        Comparison::Agree { rows } => Ok(format!("{rows} rows of A002212 agree")),
        Comparison::Mismatch {
            index,
            expected,
            computed,
        } => Err(format!(
            "index {index}: fixture {expected}, recurrence {computed}"
        )),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 9] = [
        (
            "sequence prefix a_0..a_8",
            Some(Duration::from_secs(10)),
            sequence_prefix,
        ),
        (
            "edge-refined counts b_mn",
            Some(Duration::from_secs(1)),
            edge_refined_counts,
        ),
        (
            "weight-4 census and c_4",
            Some(Duration::from_secs(1)),
            weight_four_example,
        ),
        (
            "brute-force concordance n <= 8",
            Some(Duration::from_secs(60)),
            brute_force_concordance,
        ),
        (
            "ordinary trees by passport n <= 7",
            Some(Duration::from_secs(30)),
            passport_theorem,
        ),
        ("functional equation to order 32", None, functional_equation),
        (
            "asymptotic ratio",
            Some(Duration::from_secs(10)),
            asymptotics,
        ),
        ("codec round trip n <= 8", None, codec_round_trip),
        ("OEIS A002212 fixture", None, oeis_fixture),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (other, _) => other,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{status}] {:>2}. {name} ({elapsed:.2?}): {detail}", i + 1);
    }
    if failures == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
