use std::fmt;

/// Integer Laurent polynomial `sum coeffs[i] * t^(offset + i)`.
///
/// Stored trimmed: the first and last coefficients are nonzero, and the zero
/// polynomial has no coefficients and offset 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: Vec<i128>,
    offset: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    NotIntegral,
}

impl LaurentPoly {
    pub fn new(offset: i64, coeffs: Vec<i128>) -> Self {
        let mut p = LaurentPoly { coeffs, offset };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        LaurentPoly { coeffs: Vec::new(), offset: 0 }
    }

    pub fn one() -> Self {
        LaurentPoly { coeffs: vec![1], offset: 0 }
    }

    /// `c * t^e`.
    pub fn monomial(c: i128, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    fn trim(&mut self) {
        let Some(last) = self.coeffs.iter().rposition(|&c| c != 0) else {
            self.coeffs.clear();
            self.offset = 0;
            return;
        };
        self.coeffs.truncate(last + 1);
        let first = self.coeffs.iter().position(|&c| c != 0).unwrap();
        self.coeffs.drain(..first);
        self.offset += first as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> i64 {
        self.offset
    }

    pub fn max_exp(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    /// Difference between the highest and lowest exponents; 0 for the zero
    /// polynomial.
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.max_exp() - self.min_exp()
        }
    }

    pub fn coeff(&self, e: i64) -> i128 {
        let i = e - self.offset;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_exp().min(other.min_exp());
        let hi = self.max_exp().max(other.max_exp());
        let coeffs = (lo..=hi)
            .map(|e| self.coeff(e).checked_add(other.coeff(e)).ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::new(lo, coeffs))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            offset: self.offset,
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(PolyError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(LaurentPoly::new(self.offset + other.offset, out))
    }

    /// `f(t^k)` for `k >= 1`.
    pub fn substitute_power(&self, k: u32) -> Result<Self, PolyError> {
        assert!(k >= 1, "substitution exponent must be positive");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let k = k as usize;
        let mut out = vec![0i128; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * k] = c;
        }
        let offset = self.offset.checked_mul(k as i64).ok_or(PolyError::Overflow)?;
        Ok(LaurentPoly::new(offset, out))
    }

    /// Long division from the top in `Z[t, t^-1]`: stops once the remainder's
    /// span is below the divisor's. Every leading coefficient met must be
    /// divisible by the divisor's.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let lead = divisor.leading();
        let dspan = divisor.span();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() && rem.span() >= dspan {
            let c = rem.leading();
            if c % lead != 0 {
                return Err(PolyError::NotIntegral);
            }
            let term = LaurentPoly::monomial(c / lead, rem.max_exp() - divisor.max_exp());
            rem = rem.checked_sub(&term.checked_mul(divisor)?)?;
            quot = quot.checked_add(&term)?;
        }
        Ok((quot, rem))
    }

    /// Representative up to units `±t^k`: lowest exponent 0 and positive
    /// leading coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let sign = if self.leading() < 0 { -1 } else { 1 };
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
            offset: 0,
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// `c0 + c1*t + c2*t^2 + ...` with zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match self.offset + i as i64 {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                e => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}
