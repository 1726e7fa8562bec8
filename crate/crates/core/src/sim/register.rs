use nalgebra::Complex;

use crate::error::{Error, Result};

pub type C = Complex<f64>;

/// A pure state over a growable, ordered list of labelled qubits.
///
/// The first label is the most significant bit of the amplitude index.
#[derive(Debug, Clone)]
pub(crate) struct Register<L> {
    labels: Vec<L>,
    amps: Vec<C>,
    cap: usize,
}

impl<L: Copy + PartialEq + std::fmt::Debug> Register<L> {
    /// Computational basis state `|bits⟩` over `labels`.
    pub fn basis(labels: Vec<L>, bits: usize, cap: usize) -> Result<Register<L>> {
        if labels.len() > cap {
            return Err(Error::Resource(format!(
                "{} active qubits exceed the simulator cap of {cap}",
                labels.len()
            )));
        }
        let mut amps = vec![C::new(0.0, 0.0); 1 << labels.len()];
        amps[bits] = C::new(1.0, 0.0);
        Ok(Register { labels, amps, cap })
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn contains(&self, l: L) -> bool {
        self.labels.contains(&l)
    }

    fn bit(&self, l: L) -> usize {
        let pos = self
            .labels
            .iter()
            .position(|&x| x == l)
            .unwrap_or_else(|| panic!("qubit {l:?} is not active"));
        self.labels.len() - 1 - pos
    }

    /// Appends `l` in state `a|0⟩ + b|1⟩` as the new least significant bit.
    pub fn push(&mut self, l: L, state: [C; 2]) -> Result<()> {
        if self.labels.len() + 1 > self.cap {
            return Err(Error::Resource(format!(
                "more than {} simultaneously active qubits",
                self.cap
            )));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * 2);
        for &a in &self.amps {
            amps.push(a * state[0]);
            amps.push(a * state[1]);
        }
        self.amps = amps;
        self.labels.push(l);
        Ok(())
    }

    pub fn apply1(&mut self, l: L, m: [[C; 2]; 2]) {
        let mask = 1usize << self.bit(l);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn cz(&mut self, a: L, b: L) {
        let m = (1usize << self.bit(a)) | (1usize << self.bit(b));
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & m == m {
                *amp = -*amp;
            }
        }
    }

    pub fn cx(&mut self, control: L, target: L) {
        let c = 1usize << self.bit(control);
        let t = 1usize << self.bit(target);
        for i in 0..self.amps.len() {
            if i & c != 0 && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    /// Applies the bra `⟨φ| = bra[0]⟨0| + bra[1]⟨1|` to `l` and removes it.
    pub fn project_out(&mut self, l: L, bra: [C; 2]) {
        let k = self.bit(l);
        let low = (1usize << k) - 1;
        let mut amps = Vec::with_capacity(self.amps.len() / 2);
        for j in 0..self.amps.len() / 2 {
            let i0 = ((j & !low) << 1) | (j & low);
            amps.push(bra[0] * self.amps[i0] + bra[1] * self.amps[i0 | (1 << k)]);
        }
        self.amps = amps;
        let pos = self.labels.iter().position(|&x| x == l).unwrap();
        self.labels.remove(pos);
    }

    /// Amplitudes reordered so that `order[0]` is the most significant bit.
    pub fn amplitudes_in(&self, order: &[L]) -> Vec<C> {
        assert_eq!(
            order.len(),
            self.labels.len(),
            "order must cover the register"
        );
        let bits: Vec<usize> = order.iter().map(|&l| self.bit(l)).collect();
        let n = order.len();
        let mut out = vec![C::new(0.0, 0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            let mut j = 0usize;
            for (p, &b) in bits.iter().enumerate() {
                if i >> b & 1 == 1 {
                    j |= 1 << (n - 1 - p);
                }
            }
            out[j] = a;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}
