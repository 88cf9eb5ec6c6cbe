use super::field::Poly;
use super::{CharPoly, SpectralError};

/// Weak interlacing `λ₁ ≤ μ₁ ≤ λ₂ ≤ … ≤ μ_{n−1} ≤ λ_n` of the roots of a
/// real-rooted `parent` (degree n) and `child` (degree n − 1).
///
/// Common roots are removed first with an exact gcd. What remains interlaces
/// strictly exactly when the Cauchy index of `child/parent` over the real line
/// equals the parent's degree; the index is read off a signed remainder
/// sequence using only leading-coefficient signs.
pub fn interlaces(parent: &CharPoly, child: &CharPoly) -> Result<bool, SpectralError> {
    if parent.degree() != child.degree() + 1 {
        return Err(SpectralError::DegreeMismatch {
            parent: parent.degree(),
            child: child.degree(),
        });
    }
    let p = Poly::from_ring(parent.coeffs());
    let q = Poly::from_ring(child.coeffs());
    let h = p.gcd(&q);
    let (p1, _) = p.div_rem(&h);
    let (q1, _) = q.div_rem(&h);
    let d = p1.degree();

    let mut seq = vec![p1, q1];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    let at_plus: Vec<i8> = seq.iter().map(|f| f.leading().sign()).collect();
    let at_minus: Vec<i8> = seq
        .iter()
        .zip(&at_plus)
        .map(|(f, &s)| if f.degree() % 2 == 1 { -s } else { s })
        .collect();
    let index = sign_changes(&at_minus) as i64 - sign_changes(&at_plus) as i64;
    Ok(index == d as i64)
}

fn sign_changes(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
