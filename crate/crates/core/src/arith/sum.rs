/// Neumaier's compensated summation.
///
/// Carries the rounding error of every addition in a second accumulator,
/// so long sums of terms with mixed magnitudes keep close to full precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn harmonic_tail_stable() {
        let naive: f64 = (1..=1_000_000).map(|j| 1.0 / j as f64).sum();
        let comp: CompensatedSum = (1..=1_000_000).map(|j| 1.0 / j as f64).collect();
        // H_n = ln n + gamma + 1/(2n) - 1/(12n^2) + ...
        let n = 1e6f64;
        let asym = n.ln() + 0.577_215_664_901_532_9 + 0.5 / n - 1.0 / (12.0 * n * n);
        assert!((comp.value() - asym).abs() <= (naive - asym).abs());
        assert!((comp.value() - asym).abs() < 1e-14);
    }
}
