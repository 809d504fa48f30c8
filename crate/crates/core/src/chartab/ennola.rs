//! Degree and order formulas as polynomials in `q`, for checking the
//! substitution `q ↦ -q` between the two families.

use crate::groups::Family;

use super::CharKind;

/// `(Σ coeffs[i]·q^i) / den` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<i64>,
    pub den: i64,
}

impl RatPoly {
    fn new(coeffs: Vec<i64>, den: i64) -> Self {
        RatPoly { coeffs, den }
    }

    pub fn eval(&self, q: i64) -> i128 {
        let num = self
            .coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q as i128 + c as i128);
        assert_eq!(
            num % self.den as i128,
            0,
            "polynomial is not integral at q = {q}"
        );
        num / self.den as i128
    }

    /// The polynomial `f(-q)`.
    pub fn substitute_neg(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect();
        RatPoly::new(coeffs, self.den)
    }

    pub fn negate(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.den)
    }

    /// `Some(s)` when `other(q) = s·self(-q)` identically.
    pub fn ennola_sign(&self, other: &RatPoly) -> Option<i64> {
        let sub = self.substitute_neg();
        if &sub == other {
            Some(1)
        } else if &sub.negate() == other {
            Some(-1)
        } else {
            None
        }
    }
}

pub fn degree_polynomial(family: Family, kind: CharKind) -> RatPoly {
    let e = family.epsilon();
    match kind {
        CharKind::Qs => RatPoly::new(vec![0, e, 1], 1),
        CharKind::QCubed => RatPoly::new(vec![0, 0, 0, 1], 1),
        CharKind::StPrime => RatPoly::new(vec![e, 2, 2 * e, 1], 3),
        CharKind::St => RatPoly::new(vec![e, 2, 2 * e, 1], 1),
        CharKind::Rt => RatPoly::new(vec![-e, 0, 0, 1], 1),
    }
}

/// `q³(q² - 1)(q³ - ε)`.
pub fn order_polynomial(family: Family) -> RatPoly {
    let e = family.epsilon();
    RatPoly::new(vec![0, 0, 0, e, 0, -e, -1, 0, 1], 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_relates_families() {
        for kind in CharKind::ALL {
            let sl = degree_polynomial(Family::SL, kind);
            let su = degree_polynomial(Family::SU, kind);
            assert!(sl.ennola_sign(&su).is_some(), "{kind}");
        }
        assert_eq!(
            order_polynomial(Family::SL).ennola_sign(&order_polynomial(Family::SU)),
            Some(1)
        );
    }

    #[test]
    fn evaluations() {
        assert_eq!(order_polynomial(Family::SL).eval(2), 168);
        assert_eq!(order_polynomial(Family::SU).eval(2), 216);
        assert_eq!(
            degree_polynomial(Family::SL, CharKind::StPrime).eval(7),
            152
        );
        assert_eq!(degree_polynomial(Family::SU, CharKind::Rt).eval(5), 126);
    }
}
