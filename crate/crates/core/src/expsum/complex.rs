use serde::Serialize;

/// A complex number with an absolute error bound on each of its parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub err_bound: f64,
}

impl ComplexValue {
    pub const ZERO: ComplexValue = ComplexValue {
        re: 0.0,
        im: 0.0,
        err_bound: 0.0,
    };

    pub fn new(re: f64, im: f64, err_bound: f64) -> Self {
        ComplexValue { re, im, err_bound }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn dist(&self, other: &ComplexValue) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }

    pub fn scale(&self, s: f64) -> ComplexValue {
        ComplexValue {
            re: self.re * s,
            im: self.im * s,
            err_bound: self.err_bound * s.abs() + f64::EPSILON * self.abs() * s.abs(),
        }
    }
}

/// Neumaier's compensated summation with a running error bound.
#[derive(Clone, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs_total: f64,
    terms: u64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_total += x.abs();
        self.terms += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Rounding error of the compensated result: `2 eps |S| + O(n eps^2)
    /// sum |x_i|`.
    pub fn error(&self) -> f64 {
        let e = f64::EPSILON;
        2.0 * e * self.value().abs() + 2.0 * (self.terms as f64) * e * e * self.abs_total
    }
}

/// `sum_v weights[v] * e^{2 pi i v / modulus}` computed in a fixed order,
/// each term's own rounding (about `4 eps` relative, from the
/// trigonometric evaluation and product) included in the error bound.
pub(crate) fn root_of_unity_sum(weights: &[f64], modulus: u64) -> ComplexValue {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let mut term_err = 0.0;
    for (v, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let (s, c) = unit_root(v as u64, modulus);
        re.add(w * c);
        im.add(w * s);
        term_err += 4.0 * f64::EPSILON * w.abs();
    }
    ComplexValue {
        re: re.value(),
        im: im.value(),
        err_bound: re.error().max(im.error()) + term_err,
    }
}

/// `(sin, cos)` of `2 pi v / modulus`, reduced to the first octant so the
/// argument stays small.
fn unit_root(v: u64, modulus: u64) -> (f64, f64) {
    let v = v % modulus;
    // Exact symmetries for the common rational angles.
    if v == 0 {
        return (0.0, 1.0);
    }
    if 2 * v == modulus {
        return (0.0, -1.0);
    }
    if 4 * v == modulus {
        return (1.0, 0.0);
    }
    if 4 * v == 3 * modulus {
        return (-1.0, 0.0);
    }
    let angle = std::f64::consts::TAU * (v as f64 / modulus as f64);
    angle.sin_cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut s = CompensatedSum::default();
        for x in [1e16, 1.0, -1e16, 1.0] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn full_root_sum_vanishes() {
        for m in [3u64, 5, 25, 49, 125] {
            let w = vec![1.0; m as usize];
            let z = root_of_unity_sum(&w, m);
            assert!(z.abs() <= z.err_bound + 1e-14, "{m}: {z:?}");
        }
    }
}
