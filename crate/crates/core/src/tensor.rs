//! Sparse elements of H^{⊗k}.

use std::collections::BTreeMap;

use crate::field::FieldElement;
use crate::linalg::Vector;

/// A sparse element of V^{⊗order} with dim V = n, keyed by the row-major flattened index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    n: usize,
    order: usize,
    entries: BTreeMap<u64, FieldElement>,
}

impl Tensor {
    pub fn zero(n: usize, order: usize) -> Self {
        assert!((n as f64).powi(order as i32) < 1.8e19, "tensor index overflow");
        Tensor {
            n,
            order,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn key(&self, idx: &[usize]) -> u64 {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0u64, |k, &i| k * self.n as u64 + i as u64)
    }

    pub fn digits(&self, mut key: u64) -> Vec<usize> {
        let mut d = vec![0; self.order];
        for slot in d.iter_mut().rev() {
            *slot = (key % self.n as u64) as usize;
            key /= self.n as u64;
        }
        d
    }

    pub fn basis(n: usize, idx: &[usize]) -> Self {
        let mut t = Self::zero(n, idx.len());
        t.add_at(idx, &FieldElement::one());
        t
    }

    /// Pure tensor x_1 ⊗ … ⊗ x_k.
    pub fn pure(factors: &[&[FieldElement]]) -> Self {
        let n = factors[0].len();
        let mut t = Self::zero(n, factors.len());
        let mut partial: Vec<(Vec<usize>, FieldElement)> = vec![(Vec::new(), FieldElement::one())];
        for f in factors {
            let mut next = Vec::new();
            for (idx, c) in &partial {
                for (i, x) in f.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mut j = idx.clone();
                    j.push(i);
                    next.push((j, c * x));
                }
            }
            partial = next;
        }
        for (idx, c) in partial {
            t.add_at(&idx, &c);
        }
        t
    }

    /// Order-2 tensor from a dense n² vector.
    pub fn from_dense2(n: usize, v: &[FieldElement]) -> Self {
        let mut t = Self::zero(n, 2);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                t.entries.insert(k as u64, x.clone());
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vector {
        let len = self.n.pow(self.order as u32);
        let mut v = vec![FieldElement::zero(); len];
        for (k, x) in &self.entries {
            v[*k as usize] = x.clone();
        }
        v
    }

    /// An order-1 tensor as a dense vector.
    pub fn to_vector(&self) -> Vector {
        assert_eq!(self.order, 1);
        self.to_dense()
    }

    pub fn from_vector(v: &[FieldElement]) -> Self {
        Self::pure(&[v])
    }

    pub fn add_at(&mut self, idx: &[usize], c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let k = self.key(idx);
        self.add_key(k, c);
    }

    pub fn add_key(&mut self, k: u64, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn get(&self, idx: &[usize]) -> FieldElement {
        self.entries
            .get(&self.key(idx))
            .cloned()
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &FieldElement)> + '_ {
        self.entries.iter().map(|(k, v)| (self.digits(*k), v))
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        assert_eq!((self.n, self.order), (o.n, o.order));
        let mut t = self.clone();
        for (k, v) in &o.entries {
            t.add_key(*k, v);
        }
        t
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        self.add(&o.scale(&FieldElement::from_integer(-1)))
    }

    pub fn scale(&self, s: &FieldElement) -> Tensor {
        if s.is_zero() {
            return Tensor::zero(self.n, self.order);
        }
        Tensor {
            n: self.n,
            order: self.order,
            entries: self.entries.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn conj(&self) -> Tensor {
        Tensor {
            n: self.n,
            order: self.order,
            entries: self.entries.iter().map(|(k, v)| (*k, v.conj())).collect(),
        }
    }

    /// Reorder factors: factor i of the result is factor perm[i] of self.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.order);
        let mut t = Tensor::zero(self.n, self.order);
        for (idx, v) in self.iter() {
            let new: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            t.add_at(&new, v);
        }
        t
    }

    /// Swap the two factors of an order-2 tensor.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// Tensor product with another tensor (self's factors first).
    pub fn outer(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.n, o.n);
        let mut t = Tensor::zero(self.n, self.order + o.order);
        let shift = (self.n as u64).pow(o.order as u32);
        for (ka, va) in &self.entries {
            for (kb, vb) in &o.entries {
                t.add_key(ka * shift + kb, &(va * vb));
            }
        }
        t
    }

    /// Insert the vector `x` as a new factor at position `pos`.
    pub fn insert_factor(&self, pos: usize, x: &[FieldElement]) -> Tensor {
        assert!(pos <= self.order);
        let mut t = Tensor::zero(self.n, self.order + 1);
        for (idx, v) in self.iter() {
            for (i, c) in x.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut j = idx.clone();
                j.insert(pos, i);
                t.add_at(&j, &(v * c));
            }
        }
        t
    }

    /// Apply a linear map (given on basis vectors) to factor `pos`.
    pub fn map_factor(&self, pos: usize, f: impl Fn(usize) -> Vec<(usize, FieldElement)>) -> Tensor {
        let mut t = Tensor::zero(self.n, self.order);
        let mut cache: BTreeMap<usize, Vec<(usize, FieldElement)>> = BTreeMap::new();
        for (idx, v) in self.iter() {
            let img = cache.entry(idx[pos]).or_insert_with(|| f(idx[pos]));
            for (i, c) in img.iter() {
                let mut j = idx.clone();
                j[pos] = *i;
                t.add_at(&j, &(v * c));
            }
        }
        t
    }

    /// Apply a linear functional to factor `pos`, lowering the order.
    pub fn contract_factor(&self, pos: usize, phi: &[FieldElement]) -> Tensor {
        let mut t = Tensor::zero(self.n, self.order - 1);
        for (idx, v) in self.iter() {
            let c = &phi[idx[pos]];
            if c.is_zero() {
                continue;
            }
            let mut j = idx.clone();
            j.remove(pos);
            t.add_at(&j, &(v * c));
        }
        t
    }

    /// Replace factor `pos` by the order-2 image of a map V → V⊗V.
    pub fn expand_factor(&self, pos: usize, f: impl Fn(usize) -> Vec<(usize, usize, FieldElement)>) -> Tensor {
        let mut t = Tensor::zero(self.n, self.order + 1);
        let mut cache: BTreeMap<usize, Vec<(usize, usize, FieldElement)>> = BTreeMap::new();
        for (idx, v) in self.iter() {
            let img = cache.entry(idx[pos]).or_insert_with(|| f(idx[pos]));
            for (a, b, c) in img.iter() {
                let mut j = idx.clone();
                j[pos] = *a;
                j.insert(pos + 1, *b);
                t.add_at(&j, &(v * c));
            }
        }
        t
    }

    /// The terms as (index tuple, coefficient) pairs.
    pub fn terms(&self) -> Vec<(Vec<usize>, FieldElement)> {
        self.iter().map(|(i, v)| (i, v.clone())).collect()
    }
}
