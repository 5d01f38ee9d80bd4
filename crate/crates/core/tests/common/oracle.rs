//! Brute-force reference evaluation on dense structure constants. Shares nothing with the
//! engine beyond field arithmetic: every product, coproduct and trace is a plain loop.

use std::collections::BTreeMap;

use qgroupoid::wha::QuantumGroupoid;
use qgroupoid::FieldElement;

type Fe = FieldElement;

fn zero() -> Fe {
    Fe::zero()
}

#[derive(Debug, Clone)]
pub struct Raw {
    pub n: usize,
    pub unit: Vec<Fe>,
    /// mul[(a*n + b)*n + c]: coefficient of e_c in e_a e_b.
    pub mul: Vec<Fe>,
    /// comul[(c*n + a)*n + b]: coefficient of e_a⊗e_b in Δ(e_c).
    pub comul: Vec<Fe>,
    pub counit: Vec<Fe>,
    /// s[i*n + j]: coefficient of e_i in S(e_j).
    pub s: Vec<Fe>,
}

impl Raw {
    pub fn of(h: &QuantumGroupoid) -> Self {
        let n = h.dim();
        let mut mul = vec![zero(); n * n * n];
        let mut comul = vec![zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for (c, x) in h.algebra().basis_product(a, b) {
                    mul[(a * n + b) * n + c] += x;
                }
            }
        }
        for c in 0..n {
            for (a, b, x) in h.coproduct_basis(c) {
                comul[(c * n + a) * n + b] += x;
            }
        }
        let sm = h.antipode_matrix();
        let s = (0..n * n).map(|k| sm[(k / n, k % n)].clone()).collect();
        Raw {
            n,
            unit: h.unit().clone(),
            mul,
            comul,
            counit: h.counit().clone(),
            s,
        }
    }

    /// The dual on the dual basis: products from Δ, coproducts from m, S transposed.
    pub fn dual(&self) -> Raw {
        let n = self.n;
        let mut mul = vec![zero(); n * n * n];
        let mut comul = vec![zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    mul[(a * n + b) * n + c] = self.comul[(c * n + a) * n + b].clone();
                    comul[(c * n + a) * n + b] = self.mul[(a * n + b) * n + c].clone();
                }
            }
        }
        let s = (0..n * n).map(|k| self.s[(k % n) * n + k / n].clone()).collect();
        Raw {
            n,
            unit: self.counit.clone(),
            mul,
            comul,
            counit: self.unit.clone(),
            s,
        }
    }

    fn e(&self, i: usize) -> Vec<Fe> {
        let mut v = vec![zero(); self.n];
        v[i] = Fe::one();
        v
    }

    pub fn m(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for c in 0..n {
                    let k = &self.mul[(a * n + b) * n + c];
                    if !k.is_zero() {
                        out[c] += &(&xy * k);
                    }
                }
            }
        }
        out
    }

    pub fn antipode(&self, x: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![zero(); n];
        for j in 0..n {
            if x[j].is_zero() {
                continue;
            }
            for i in 0..n {
                out[i] += &(&self.s[i * n + j] * &x[j]);
            }
        }
        out
    }

    pub fn eps(&self, x: &[Fe]) -> Fe {
        x.iter().zip(&self.counit).fold(zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Δ(x) as a dense n² array.
    pub fn delta(&self, x: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![zero(); n * n];
        for c in 0..n {
            if x[c].is_zero() {
                continue;
            }
            for k in 0..n * n {
                let d = &self.comul[c * n * n + k];
                if !d.is_zero() {
                    out[k] += &(&x[c] * d);
                }
            }
        }
        out
    }

    /// Componentwise product of two dense k-fold tensors.
    pub fn tprod(&self, x: &[Fe], y: &[Fe], k: usize) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![zero(); x.len()];
        let digits = |mut i: usize| {
            let mut d = vec![0; k];
            for p in (0..k).rev() {
                d[p] = i % n;
                i /= n;
            }
            d
        };
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let di = digits(i);
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let dj = digits(j);
                // expand the product factor by factor
                let mut acc: Vec<(usize, Fe)> = vec![(0, xi * yj)];
                for p in 0..k {
                    let mut next = Vec::new();
                    for (idx, c) in &acc {
                        for r in 0..n {
                            let m = &self.mul[(di[p] * n + dj[p]) * n + r];
                            if !m.is_zero() {
                                next.push((idx * n + r, c * m));
                            }
                        }
                    }
                    acc = next;
                }
                for (idx, c) in acc {
                    out[idx] += &c;
                }
            }
        }
        out
    }

    fn outer(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for a in x {
            for b in y {
                out.push(a * b);
            }
        }
        out
    }

    /// ε_t(x) = Σ ε(1₁x) 1₂.
    pub fn eps_t(&self, x: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let d1 = self.delta(&self.unit);
        let mut out = vec![zero(); n];
        for p in 0..n {
            for q in 0..n {
                let c = &d1[p * n + q];
                if !c.is_zero() {
                    let e = self.eps(&self.m(&self.e(p), x));
                    out[q] += &(c * &e);
                }
            }
        }
        out
    }

    /// ε_s(x) = Σ 1₁ ε(x1₂).
    pub fn eps_s(&self, x: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let d1 = self.delta(&self.unit);
        let mut out = vec![zero(); n];
        for p in 0..n {
            for q in 0..n {
                let c = &d1[p * n + q];
                if !c.is_zero() {
                    let e = self.eps(&self.m(x, &self.e(q)));
                    out[p] += &(c * &e);
                }
            }
        }
        out
    }

    /// Every axiom by name, evaluated on all basis tuples.
    pub fn axioms(&self) -> BTreeMap<&'static str, bool> {
        let n = self.n;
        let e: Vec<Vec<Fe>> = (0..n).map(|i| self.e(i)).collect();
        let mut out = BTreeMap::new();
        let all = |f: &dyn Fn(usize) -> bool| (0..n).all(f);

        out.insert(
            "associativity",
            all(&|a| all(&|b| all(&|c| self.m(&self.m(&e[a], &e[b]), &e[c]) == self.m(&e[a], &self.m(&e[b], &e[c]))))),
        );
        out.insert("unit", all(&|a| self.m(&self.unit, &e[a]) == e[a] && self.m(&e[a], &self.unit) == e[a]));

        let deltas: Vec<Vec<Fe>> = e.iter().map(|x| self.delta(x)).collect();
        // (Δ⊗id)Δ(x) and (id⊗Δ)Δ(x) as n³ arrays
        let left = |d: &[Fe]| {
            let mut out = vec![zero(); n * n * n];
            for p in 0..n {
                for q in 0..n {
                    let c = &d[p * n + q];
                    if c.is_zero() {
                        continue;
                    }
                    for (k, x) in deltas[p].iter().enumerate() {
                        out[k * n + q] += &(c * x);
                    }
                }
            }
            out
        };
        let right = |d: &[Fe]| {
            let mut out = vec![zero(); n * n * n];
            for p in 0..n {
                for q in 0..n {
                    let c = &d[p * n + q];
                    if c.is_zero() {
                        continue;
                    }
                    for (k, x) in deltas[q].iter().enumerate() {
                        out[p * n * n + k] += &(c * x);
                    }
                }
            }
            out
        };
        out.insert("coassociativity", all(&|c| left(&deltas[c]) == right(&deltas[c])));
        out.insert(
            "counit",
            all(&|c| {
                let mut l = vec![zero(); n];
                let mut r = vec![zero(); n];
                for p in 0..n {
                    for q in 0..n {
                        let d = &deltas[c][p * n + q];
                        l[q] += &(&self.counit[p] * d);
                        r[p] += &(&self.counit[q] * d);
                    }
                }
                l == e[c] && r == e[c]
            }),
        );
        out.insert(
            "comultiplication_multiplicative",
            all(&|a| all(&|b| self.delta(&self.m(&e[a], &e[b])) == self.tprod(&deltas[a], &deltas[b], 2))),
        );

        let d1 = self.delta(&self.unit);
        let d1_then_1 = self.outer(&d1, &self.unit);
        let one_then_d1 = self.outer(&self.unit, &d1);
        let dd1 = left(&d1);
        out.insert(
            "unit_coproduct",
            dd1 == self.tprod(&d1_then_1, &one_then_d1, 3) && dd1 == self.tprod(&one_then_d1, &d1_then_1, 3),
        );

        let eps2: Vec<Fe> = (0..n * n).map(|k| self.eps(&self.m(&e[k / n], &e[k % n]))).collect();
        out.insert(
            "weak_counit",
            all(&|f| {
                all(&|g| {
                    all(&|h| {
                        let fgh = self.eps(&self.m(&self.m(&e[f], &e[g]), &e[h]));
                        let mut a = zero();
                        let mut b = zero();
                        for p in 0..n {
                            for q in 0..n {
                                let d = &deltas[g][p * n + q];
                                if d.is_zero() {
                                    continue;
                                }
                                a += &(d * &(&eps2[f * n + p] * &eps2[q * n + h]));
                                b += &(d * &(&eps2[f * n + q] * &eps2[p * n + h]));
                            }
                        }
                        fgh == a && fgh == b
                    })
                })
            }),
        );

        let s_e: Vec<Vec<Fe>> = e.iter().map(|x| self.antipode(x)).collect();
        let contract = |h: usize, first: bool| {
            let mut out = vec![zero(); n];
            for p in 0..n {
                for q in 0..n {
                    let d = &deltas[h][p * n + q];
                    if d.is_zero() {
                        continue;
                    }
                    let prod = if first { self.m(&e[p], &s_e[q]) } else { self.m(&s_e[p], &e[q]) };
                    for (o, x) in out.iter_mut().zip(&prod) {
                        *o += &(d * x);
                    }
                }
            }
            out
        };
        out.insert("antipode_target", all(&|h| contract(h, true) == self.eps_t(&e[h])));
        out.insert("antipode_source", all(&|h| contract(h, false) == self.eps_s(&e[h])));
        out.insert(
            "antipode_antimultiplicative",
            all(&|a| all(&|b| self.antipode(&self.m(&e[a], &e[b])) == self.m(&s_e[b], &s_e[a]))),
        );
        out.insert(
            "antipode_anticomultiplicative",
            all(&|h| {
                let mut rhs = vec![zero(); n * n];
                for p in 0..n {
                    for q in 0..n {
                        let d = &deltas[h][p * n + q];
                        if d.is_zero() {
                            continue;
                        }
                        // S(h₂)⊗S(h₁)
                        for (k, x) in self.outer(&s_e[q], &s_e[p]).iter().enumerate() {
                            rhs[k] += &(d * x);
                        }
                    }
                }
                self.delta(&s_e[h]) == rhs
            }),
        );
        out
    }

    /// Columns ε_t(e_j).
    pub fn eps_t_columns(&self) -> Vec<Vec<Fe>> {
        (0..self.n).map(|j| self.eps_t(&self.e(j))).collect()
    }

    pub fn eps_s_columns(&self) -> Vec<Vec<Fe>> {
        (0..self.n).map(|j| self.eps_s(&self.e(j))).collect()
    }

    /// dim H_t as the trace of the idempotent ε_t.
    pub fn dim_ht(&self) -> Fe {
        (0..self.n).fold(zero(), |acc, j| &acc + &self.eps_t(&self.e(j))[j])
    }

    /// u = Σ S(R₂)R₁ from a dense R.
    pub fn drinfeld_u(&self, r: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![zero(); n];
        for p in 0..n {
            for q in 0..n {
                let c = &r[p * n + q];
                if c.is_zero() {
                    continue;
                }
                let t = self.m(&self.antipode(&self.e(q)), &self.e(p));
                for (o, x) in out.iter_mut().zip(&t) {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    pub fn monodromy(&self, r: &[Fe]) -> Vec<Fe> {
        let n = self.n;
        let r21: Vec<Fe> = (0..n * n).map(|k| r[(k % n) * n + k / n].clone()).collect();
        self.tprod(&r21, r, 2)
    }

    /// Whether the matrices ρ(e_a) form a representation.
    pub fn is_representation(&self, rho: &[Vec<Vec<Fe>>]) -> bool {
        let n = self.n;
        let d = rho.first().map_or(0, |m| m.len());
        let matmul = |x: &[Vec<Fe>], y: &[Vec<Fe>]| -> Vec<Vec<Fe>> {
            (0..d)
                .map(|i| (0..d).map(|j| (0..d).fold(zero(), |acc, k| &acc + &(&x[i][k] * &y[k][j]))).collect())
                .collect()
        };
        let combo = |v: &[Fe]| -> Vec<Vec<Fe>> {
            (0..d)
                .map(|i| (0..d).map(|j| (0..n).fold(zero(), |acc, c| &acc + &(&v[c] * &rho[c][i][j]))).collect())
                .collect()
        };
        let ok_unit = combo(&self.unit) == (0..d).map(|i| (0..d).map(|j| if i == j { Fe::one() } else { zero() }).collect()).collect::<Vec<Vec<Fe>>>();
        ok_unit && (0..n).all(|a| (0..n).all(|b| matmul(&rho[a], &rho[b]) == combo(&self.m(&self.e(a), &self.e(b)))))
    }

    /// S_ij = (dim H_t)⁻¹ Σ X_ab χ_j(e_a) χ_i(e_b) with X = (uν⊗uν)R₂₁R and χ from the traces of ρ.
    pub fn s_matrix(&self, r: &[Fe], nu: &[Fe], irreps: &[Vec<Vec<Vec<Fe>>>]) -> Vec<Vec<Fe>> {
        let n = self.n;
        let chars: Vec<Vec<Fe>> = irreps
            .iter()
            .map(|rho| rho.iter().map(|m| (0..m.len()).fold(zero(), |acc, i| &acc + &m[i][i])).collect())
            .collect();
        let unu = self.m(&self.drinfeld_u(r), nu);
        let x = self.tprod(&self.outer(&unu, &unu), &self.monodromy(r), 2);
        let dt = self.dim_ht().inverse().expect("dim H_t is nonzero");
        let k = irreps.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = zero();
                        for a in 0..n {
                            for b in 0..n {
                                let c = &x[a * n + b];
                                if !c.is_zero() {
                                    acc += &(c * &(&chars[j][a] * &chars[i][b]));
                                }
                            }
                        }
                        &acc * &dt
                    })
                    .collect()
            })
            .collect()
    }
}
