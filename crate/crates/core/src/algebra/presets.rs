//! Named Lie algebras.

use super::LieAlgebra;
use crate::error::{Error, Result};

fn labels(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// Commutative algebra of dimension `n`.
pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::from_sparse(n, None, &[]).expect("abelian constants are valid")
}

/// `so(3)` with `[e_i, e_j] = ε_{ijk} e_k`.
pub fn so3() -> LieAlgebra {
    LieAlgebra::from_sparse(
        3,
        labels(&["e1", "e2", "e3"]),
        &[(2, 0, 1, 1.0), (0, 1, 2, 1.0), (1, 2, 0, 1.0)],
    )
    .expect("so3 constants are valid")
}

/// `sl(2)` in the basis `(h, e, f)`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_sparse(
        3,
        labels(&["h", "e", "f"]),
        &[(1, 0, 1, 2.0), (2, 0, 2, -2.0), (0, 1, 2, 1.0)],
    )
    .expect("sl2 constants are valid")
}

/// Three-dimensional Heisenberg algebra, `[e1, e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::from_sparse(3, labels(&["e1", "e2", "e3"]), &[(2, 0, 1, 1.0)])
        .expect("heisenberg constants are valid")
}

/// Looks up a preset by name: `so3`, `sl2`, `heisenberg`, `abelian(n)` and
/// `tangent(<preset>)`, which may nest.
pub fn preset(name: &str) -> Result<LieAlgebra> {
    let name = name.trim();
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "so3" | "so(3)" => return Ok(so3()),
        "sl2" | "sl(2)" => return Ok(sl2()),
        "heisenberg" => return Ok(heisenberg()),
        _ => {}
    }
    let inner = |prefix: &str| -> Option<&str> {
        let rest = name.get(prefix.len()..)?;
        if lower.starts_with(prefix) {
            rest.strip_prefix('(')?.strip_suffix(')')
        } else {
            None
        }
    };
    if let Some(arg) = inner("abelian") {
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| Error::UnknownPreset(name.to_string()))?;
        if n == 0 {
            return Err(Error::UnknownPreset(name.to_string()));
        }
        return Ok(abelian(n));
    }
    if let Some(arg) = inner("tangent") {
        return Ok(preset(arg)?.tangent());
    }
    Err(Error::UnknownPreset(name.to_string()))
}
