use std::fmt;

use serde::Serialize;

use crate::algebra::{bareiss, Field, Matrix, MonomialOrder, Poly, Ring, Scalar, SymMatrix};
use crate::error::{Error, Result};
use crate::grassmann::{
    linear_poly, pluecker_relations, pluecker_ring, wedge, y_linear_form_vectors, FlagLine,
    Subspace,
};
use crate::groebner::Ideal;

/// Pairs `(a, b)`, `a < b`, indexing a basis of `∧²V4` built from a basis of `V4`.
const PAIRS4: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The quadric `q_G = c01 c23 - c02 c13 + c03 c12` of `Gr(2,V4)` on `∧²V4`, as a Gram matrix.
fn pfaffian_gram(field: Field) -> SymMatrix<Scalar> {
    let half = field.from_ratio(1, 2).expect("odd characteristic");
    // Pairs (01,23), (02,13), (03,12) sit at positions (0,5), (1,4), (2,3).
    SymMatrix::from_fn(6, |i, j| match (i.min(j), i.max(j)) {
        (0, 5) | (2, 3) => half.clone(),
        (1, 4) => -&half,
        _ => field.zero(),
    })
}

/// Basis of `∧²V4` inside `∧²k^5`, in the order of `PAIRS4`.
fn wedge_basis(v4: &Subspace) -> Vec<Vec<Scalar>> {
    let b = v4.rows();
    PAIRS4.iter().map(|&(i, j)| wedge(&b[i], &b[j])).collect()
}

/// `K_{[V4]} = ∧²V4 ∩ {ℓ1 = ℓ2 = 0}`.
pub fn k_of_v4(v4: &Subspace) -> Result<Subspace> {
    check_v4(v4)?;
    let f = v4.field();
    let wedge4 = Subspace::new(f, 10, wedge_basis(v4))?;
    let hyper = Subspace::from_equations(f, 10, y_linear_form_vectors(f).to_vec())?;
    Ok(wedge4.intersect(&hyper))
}

fn check_v4(v4: &Subspace) -> Result<()> {
    if v4.ambient() != 5 || v4.dim() != 4 {
        return Err(Error::InvalidInput("V4 must be a hyperplane of k^5".into()));
    }
    Ok(())
}

/// Gram matrix of `q_G` restricted to a subspace `U ⊂ ∧²V4`, in the canonical basis of `U`.
pub fn restricted_gram(v4: &Subspace, u: &Subspace) -> Result<SymMatrix<Scalar>> {
    let f = v4.field();
    if f.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let basis = Matrix::from_rows(f, wedge_basis(v4))?;
    let coords = u
        .rows()
        .iter()
        .map(|r| {
            basis
                .solve_left(r)
                .ok_or_else(|| Error::InvalidInput("subspace not contained in ∧²V4".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pfaffian_gram(f).restrict(&Matrix::from_rows(f, coords)?))
}

/// Rank class of the conic `P(U3) ∩ Gr(2,V4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicClass {
    Smooth,
    LinePair,
    DoubleLine,
    Plane,
}

impl ConicClass {
    pub fn from_rank(rank: usize) -> ConicClass {
        match rank {
            3 => ConicClass::Smooth,
            2 => ConicClass::LinePair,
            1 => ConicClass::DoubleLine,
            _ => ConicClass::Plane,
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConicClass::Smooth => "smooth",
            ConicClass::LinePair => "line-pair",
            ConicClass::DoubleLine => "double-line",
            ConicClass::Plane => "plane",
        };
        write!(f, "{s}")
    }
}

/// A point `(U3, V4)` of the incidence space: `U3 ⊂ K_{[V4]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPair {
    u3: Subspace,
    v4: Subspace,
}

impl ConicPair {
    pub fn new(u3: Subspace, v4: Subspace) -> Result<ConicPair> {
        if u3.ambient() != 10 || u3.dim() != 3 {
            return Err(Error::InvalidInput("U3 must be a 3-dimensional subspace of ∧²k^5".into()));
        }
        if !k_of_v4(&v4)?.contains(&u3) {
            return Err(Error::InvalidInput("U3 is not contained in K_[V4]".into()));
        }
        Ok(ConicPair { u3, v4 })
    }

    pub fn u3(&self) -> &Subspace {
        &self.u3
    }

    pub fn v4(&self) -> &Subspace {
        &self.v4
    }

    pub fn gram(&self) -> Result<SymMatrix<Scalar>> {
        restricted_gram(&self.v4, &self.u3)
    }

    pub fn rank(&self) -> Result<usize> {
        self.gram()?.rank()
    }

    pub fn conic_class(&self) -> Result<ConicClass> {
        Ok(ConicClass::from_rank(self.rank()?))
    }

    pub fn in_dbar(&self) -> Result<bool> {
        Ok(self.rank()? <= 1)
    }

    /// Homogeneous ideal of `P(U3) ∩ Gr(2,5)` in `P^9`.
    pub fn psi(&self) -> Result<Ideal> {
        let f = self.u3.field();
        let r = pluecker_ring(f);
        let mut gens: Vec<Poly> = self
            .u3
            .annihilator()
            .iter()
            .map(|form| linear_poly(&r, form))
            .collect();
        gens.extend(pluecker_relations(&r)?);
        Ok(Ideal::new(&r, gens)?.reduced_gb())
    }

    /// For a double line, its support: the zero line of the rank-one form.
    pub fn support_line(&self) -> Result<FlagLine> {
        let g = self.gram()?;
        if g.rank()? != 1 {
            return Err(Error::InvalidInput("support_line needs a rank-one conic".into()));
        }
        let f = self.u3.field();
        let ker = g.to_matrix(f).nullspace();
        let basis = self.u3.basis();
        let rows = ker
            .iter()
            .map(|c| {
                (0..10)
                    .map(|j| {
                        (0..3).fold(f.zero(), |acc, i| &acc + &(&c[i] * &basis[(i, j)]))
                    })
                    .collect()
            })
            .collect();
        FlagLine::from_span(&Subspace::new(f, 10, rows)?)
    }
}

/// Ideal in `w0..w3` of hyperplanes `U3 = ker w` of `K_{[V4]}` on which `q_G` has rank `≤ 1`:
/// the 4x4 minors of the bordered matrix `[[G_K, w^T], [w, 0]]`.
pub fn dbar_fiber_ideal(v4: &Subspace) -> Result<Ideal> {
    let f = v4.field();
    let k = k_of_v4(v4)?;
    if k.dim() != 4 {
        return Err(Error::Anomaly(format!("K_[V4] has dimension {}", k.dim())));
    }
    let g = restricted_gram(v4, &k)?;
    let r = Ring::new(&["w0", "w1", "w2", "w3"], f, MonomialOrder::GrevLex);
    let w: Vec<Poly> = (0..4).map(|i| r.var(&format!("w{i}")).unwrap()).collect();
    let big: Vec<Vec<Poly>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| match (i, j) {
                    (4, 4) => r.zero(),
                    (4, j) => w[j].clone(),
                    (i, 4) => w[i].clone(),
                    (i, j) => Poly::constant(&r, g.get(i, j).clone()),
                })
                .collect()
        })
        .collect();
    let mut minors = Vec::new();
    for skip_r in 0..5 {
        for skip_c in 0..5 {
            let sub: Vec<Vec<Poly>> = (0..5)
                .filter(|&i| i != skip_r)
                .map(|i| {
                    (0..5)
                        .filter(|&j| j != skip_c)
                        .map(|j| big[i][j].clone())
                        .collect()
                })
                .collect();
            minors.push(bareiss(&sub)?.1.expect("square"));
        }
    }
    Ideal::new(&r, minors)
}

/// Projective dimension of the double-line fiber over `[V4]`; `None` when empty.
pub fn dbar_fiber_dim(v4: &Subspace) -> Result<Option<usize>> {
    Ok(dbar_fiber_ideal(v4)?.projective_dim())
}

/// The hyperplane `{x ∈ K : B(x, z) = 0}` of `K_{[V4]}` for an isotropic `z ∈ K`.
pub fn tangent_u3(v4: &Subspace, z: &[Scalar]) -> Result<Subspace> {
    let f = v4.field();
    let k = k_of_v4(v4)?;
    let g = restricted_gram(v4, &k)?.to_matrix(f);
    let zc = k
        .basis()
        .solve_left(z)
        .ok_or_else(|| Error::InvalidInput("z is not in K".into()))?;
    let form = g.mul_vec(&zc);
    let sols = Matrix::from_rows(f, vec![form])?.nullspace();
    let rows = sols
        .iter()
        .map(|c| {
            (0..10)
                .map(|j| (0..4).fold(f.zero(), |acc, i| &acc + &(&c[i] * &k.basis()[(i, j)])))
                .collect()
        })
        .collect();
    Subspace::new(f, 10, rows)
}
