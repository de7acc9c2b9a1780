use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntPoly, NumtError};

/// Resultant of two nonzero integer polynomials.
///
/// Uses the subresultant pseudo-remainder sequence, so all intermediate
/// divisions are exact over `Z`. Follows the usual conventions:
/// `Res(f, c) = c^{deg f}` for a constant `c`, and
/// `Res(f, g) = (-1)^{deg f · deg g} Res(g, f)`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, NumtError> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(NumtError::ZeroPolynomial);
    };
    if dg == 0 {
        return Ok(num_traits::pow(g.coeff(0), df));
    }
    if df == 0 {
        return Ok(num_traits::pow(f.coeff(0), dg));
    }

    let ca = f.content();
    let cb = g.content();
    let mut a = f.div_scalar_exact(&ca).expect("content divides");
    let mut b = g.div_scalar_exact(&cb).expect("content divides");
    let t = num_traits::pow(ca, dg) * num_traits::pow(cb, df);

    let mut sign = BigInt::one();
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -sign;
        }
    }

    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &gg * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
        gg = a.leading_coeff().expect("nonzero").clone();
        // h <- g^δ / h^(δ-1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        let db = b.degree().expect("nonzero");
        if db == 0 {
            let da = a.degree().expect("nonzero");
            let lb = b.coeff(0);
            // h <- lc(B)^{deg A} / h^{deg A - 1}
            let hh = num_traits::pow(lb, da) / num_traits::pow(h, da - 1);
            return Ok(sign * t * hh);
        }
    }
}
