//! Brute-force curvature of a left-invariant metric given by an orthonormal
//! frame with `[e2,e3] = a1 e1`, `[e3,e1] = a2 e2`, `[e1,e2] = a3 e3`.
//!
//! Nothing here uses closed-form Milnor formulas. The Levi-Civita connection
//! comes from the Koszul formula on the frame, the Riemann tensor from its
//! definition, and every contraction is an explicit index sum. The library
//! crates check their closed forms against this.

/// Full structure tensor: `c[i][j][k]` is the `e_k` component of `[e_i, e_j]`.
pub fn structure_tensor(a: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    let mut c = [[[0.0; 3]; 3]; 3];
    for (i, j, k) in [(1, 2, 0), (2, 0, 1), (0, 1, 2)] {
        c[i][j][k] = a[k];
        c[j][i][k] = -a[k];
    }
    c
}

/// `gamma[i][j][k]` is the `e_k` component of `∇_{e_i} e_j`.
///
/// Koszul on an orthonormal left-invariant frame:
/// `2<∇_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>`.
pub fn connection(a: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    let c = structure_tensor(a);
    let mut g = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                g[i][j][k] = 0.5 * (c[i][j][k] - c[j][k][i] + c[k][i][j]);
            }
        }
    }
    g
}

/// `r[i][j][k][l] = <R(e_i, e_j) e_k, e_l>` with
/// `R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_[X,Y] Z`.
pub fn riemann(a: [f64; 3]) -> [[[[f64; 3]; 3]; 3]; 3] {
    let c = structure_tensor(a);
    let g = connection(a);
    let mut r = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut v = 0.0;
                    // ∇_{e_i}(∇_{e_j} e_k) = Σ_m Γ_jk^m ∇_{e_i} e_m
                    for m in 0..3 {
                        v += g[j][k][m] * g[i][m][l];
                        v -= g[i][k][m] * g[j][m][l];
                        v -= c[i][j][m] * g[m][k][l];
                    }
                    r[i][j][k][l] = v;
                }
            }
        }
    }
    r
}

/// Everything the closed-form profile reports, computed by index sums.
#[derive(Debug, Clone, Copy)]
pub struct OracleCurvature {
    /// Sectional curvature of the plane spanned by the two frame vectors other than `e_i`.
    pub sectional: [f64; 3],
    /// Diagonal of the Ricci tensor.
    pub ricci: [f64; 3],
    /// Largest off-diagonal Ricci entry in absolute value.
    pub ricci_offdiag: f64,
    pub scalar: f64,
    /// Diagonal of `Rm²_ij = R_ipqr R_jpqr`.
    pub rm2: [f64; 3],
    pub rm2_offdiag: f64,
}

pub fn curvature(a: [f64; 3]) -> OracleCurvature {
    let r = riemann(a);
    let mut sectional = [0.0; 3];
    for (i, (p, q)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        // K(X,Y) = <R(X,Y)Y, X> for orthonormal X, Y
        sectional[i] = r[p][q][q][p];
    }
    let mut ric = [[0.0; 3]; 3];
    let mut rm2 = [[0.0; 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            for i in 0..3 {
                ric[j][k] += r[i][j][k][i];
            }
            for p in 0..3 {
                for q in 0..3 {
                    for s in 0..3 {
                        rm2[j][k] += r[j][p][q][s] * r[k][p][q][s];
                    }
                }
            }
        }
    }
    let mut ricci_offdiag: f64 = 0.0;
    let mut rm2_offdiag: f64 = 0.0;
    for j in 0..3 {
        for k in 0..3 {
            if j != k {
                ricci_offdiag = ricci_offdiag.max(ric[j][k].abs());
                rm2_offdiag = rm2_offdiag.max(rm2[j][k].abs());
            }
        }
    }
    OracleCurvature {
        sectional,
        ricci: [ric[0][0], ric[1][1], ric[2][2]],
        ricci_offdiag,
        scalar: ric[0][0] + ric[1][1] + ric[2][2],
        rm2: [rm2[0][0], rm2[1][1], rm2[2][2]],
        rm2_offdiag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_e2_has_zero_curvature() {
        let o = curvature([1.0, 1.0, 0.0]);
        for v in o.sectional.iter().chain(&o.ricci).chain(&o.rm2) {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn round_sphere_is_einstein() {
        // (2,2,2) is the unit round sphere: K = 1, Ric = 2
        let o = curvature([2.0, 2.0, 2.0]);
        for i in 0..3 {
            assert!((o.sectional[i] - 1.0).abs() < 1e-14);
            assert!((o.ricci[i] - 2.0).abs() < 1e-14);
        }
        assert!(o.ricci_offdiag < 1e-15);
    }

    #[test]
    fn riemann_symmetries() {
        let r = riemann([0.7, -1.3, 2.1]);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert!((r[i][j][k][l] + r[j][i][k][l]).abs() < 1e-12);
                        assert!((r[i][j][k][l] + r[i][j][l][k]).abs() < 1e-12);
                        assert!((r[i][j][k][l] - r[k][l][i][j]).abs() < 1e-12);
                    }
                }
            }
        }
    }
}
