//! Braid-word generators and the Markov-move suite shared by the invariant tests.

use qgroupoid::invariants::{braid_endomorphism, link_invariant, BraidWord};
use qgroupoid::qt::{QtData, RibbonData};
use qgroupoid::rep::{irreducibles, HModule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn palette(qt: &QtData) -> Vec<HModule> {
    irreducibles(&qt.h).unwrap().into_iter().map(|i| i.module).collect()
}

pub fn random_word(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect()
}

/// A random closed braid with a consistent coloring.
pub fn random_link(rng: &mut ChaCha8Rng, strands: usize, colors: usize) -> BraidWord {
    let len = rng.gen_range(0..6);
    let w = BraidWord::new(strands, random_word(rng, strands, len)).unwrap();
    let comps = w.components();
    let mut c = vec![0; strands];
    for comp in &comps {
        let col = rng.gen_range(0..colors);
        for &s in comp {
            c[s] = col;
        }
    }
    let framing = (0..comps.len()).map(|_| rng.gen_range(-2..3)).collect();
    w.with_colors(c).unwrap().with_framing(framing).unwrap()
}

/// Framings of `b` transported to the components of g b g⁻¹.
pub fn reindex_framing(b: &BraidWord, conj: &BraidWord, g: &BraidWord) -> Vec<i64> {
    // strand starting at position p in conj enters b at the position g moves it to
    let mut at: Vec<usize> = (0..g.strands).collect();
    for x in &g.word {
        let i = x.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    let mut pos_of = vec![0; g.strands];
    for (p, &s) in at.iter().enumerate() {
        pos_of[s] = p;
    }
    let of_b = b.component_of_strands();
    conj.components().iter().map(|c| b.framing_of(of_b[pos_of[c[0]]])).collect()
}

/// Conjugation and both stabilizations on `cases` random colored links.
pub fn markov_suite(qt: &QtData, rib: &RibbonData, seed: u64, cases: usize) -> Result<(), String> {
    let pal = palette(qt);
    let inv = |b: &BraidWord| link_invariant(b, qt, rib, &pal).map_err(|e| format!("{b}: {e}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let strands = rng.gen_range(2..4);
        let b = random_link(&mut rng, strands, pal.len());
        let value = inv(&b)?;
        // conjugation g b g⁻¹: colors at the bottom are carried back through g⁻¹
        let g = BraidWord::new(strands, random_word(&mut rng, strands, 3)).unwrap();
        let ginv = BraidWord {
            colors: b.colors.clone(),
            ..g.inverse()
        };
        let start = BraidWord {
            colors: ginv.final_colors(),
            ..g.clone()
        };
        let conj = BraidWord {
            framing: Vec::new(),
            ..start.then(&b).then(&g.inverse())
        };
        // components may be renumbered; carry framings by strand
        let framing = reindex_framing(&b, &conj, &g);
        let conj = conj.with_framing(framing).unwrap();
        if inv(&conj)? != value {
            return Err(format!("conjugating {b} by {g} changes the invariant"));
        }
        for sign in [1, -1] {
            let mut st = b.clone();
            st.strands += 1;
            st.word.push(sign * strands as i32);
            st.colors.push(b.final_colors()[strands - 1]);
            if inv(&st)? != value {
                return Err(format!("stabilizing {b} with sign {sign} changes the invariant"));
            }
        }
    }
    Ok(())
}

/// Inverse, far-commutation and braid relations on four strands with random colors.
pub fn braid_relations(qt: &QtData, seeds: u64) -> Result<(), String> {
    let pal = palette(qt);
    let k = pal.len();
    for seed in 0..seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colors: Vec<usize> = (0..4).map(|_| rng.gen_range(0..k)).collect();
        let e = |w: &str| {
            let b = format!("m=4 {w}").parse::<BraidWord>().unwrap().with_colors(colors.clone()).unwrap();
            braid_endomorphism(&b, qt, &pal).unwrap()
        };
        let mut pairs: Vec<(String, String)> = Vec::new();
        for i in 1..=3 {
            pairs.push((format!("s{i} s{i}^-1"), String::new()));
            pairs.push((format!("s{i}^-1 s{i}"), String::new()));
        }
        for i in 1..=2 {
            let j = i + 1;
            pairs.push((format!("s{i} s{j} s{i}"), format!("s{j} s{i} s{j}")));
        }
        pairs.push(("s1 s3".into(), "s3 s1".into()));
        pairs.push(("s1^-1 s3".into(), "s3 s1^-1".into()));
        for (l, r) in pairs {
            if e(&l) != e(&r) {
                return Err(format!("{l} != {r} with colors {colors:?}"));
            }
        }
    }
    Ok(())
}
