//! Projective varieties, points and linear subspaces.

use std::fmt;

use entloc_algebra::ideal::linear_form;
use entloc_algebra::{
    Budget, Field, HilbertInvariants, Ideal, Matrix, MonomialOrder, PolyRing, Polynomial, Ring,
};
use rand::Rng;
use serde::Serialize;

use crate::error::{GeomError, Result};

/// `r + 1` forms of a common degree in the parameter ring.
#[derive(Clone, Debug)]
pub struct Parametrization<F: Field> {
    ring: Ring<F>,
    forms: Vec<Polynomial<F>>,
    degree: u32,
}

impl<F: Field> Parametrization<F> {
    pub fn new(ring: &Ring<F>, forms: Vec<Polynomial<F>>) -> Result<Self> {
        let mut degree = None;
        for f in &forms {
            if f.is_zero() {
                continue;
            }
            if !f.is_homogeneous() {
                return Err(GeomError::Precondition("parametrizing form is not homogeneous".into()));
            }
            let d = f.total_degree().unwrap_or(0);
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(GeomError::Precondition(
                        "parametrizing forms have different degrees".into(),
                    ))
                }
                _ => {}
            }
        }
        let degree = degree.ok_or_else(|| GeomError::Precondition("all forms vanish".into()))?;
        Ok(Parametrization {
            ring: ring.clone(),
            forms,
            degree,
        })
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nparams(&self) -> usize {
        self.ring.nvars()
    }

    pub fn eval(&self, s: &[F::Elem]) -> Vec<F::Elem> {
        self.forms.iter().map(|f| f.eval(s)).collect()
    }

    /// The partial derivatives `∂φ/∂s_j` at `s`, one vector per parameter.
    /// Together with `φ(s)` (Euler) they span the affine-cone tangent space.
    pub fn tangent_vectors(&self, s: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        (0..self.nparams())
            .map(|j| self.forms.iter().map(|f| f.derivative(j).eval(s)).collect())
            .collect()
    }

    /// `m · φ`, the parametrization followed by a linear map.
    pub fn compose(&self, m: &Matrix<F>) -> Result<Parametrization<F>> {
        let forms = (0..m.rows())
            .map(|i| {
                self.forms
                    .iter()
                    .enumerate()
                    .fold(Polynomial::zero(&self.ring), |acc, (j, f)| {
                        acc.add(&f.scale(m.get(i, j)))
                    })
            })
            .collect();
        Parametrization::new(&self.ring, forms)
    }

    /// Substitutes the parametrization into a polynomial on the ambient ring.
    pub fn pull_back(&self, g: &Polynomial<F>) -> Polynomial<F> {
        g.substitute(&self.forms)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VarietyMeta {
    pub name: String,
    /// Expected dimension.
    pub n: Option<usize>,
    /// Expected degree.
    pub d: Option<u64>,
    /// Expected sectional genus (arithmetic genus for curves).
    pub g: Option<i64>,
    pub seed: Option<u64>,
}

/// `X ⊂ ℙ^r` given by a homogeneous ideal in `x_0..x_r`.
#[derive(Clone, Debug)]
pub struct ProjectiveVariety<F: Field> {
    ideal: Ideal<F>,
    param: Option<Parametrization<F>>,
    pub meta: VarietyMeta,
}

impl<F: Field> ProjectiveVariety<F> {
    pub fn new(ideal: Ideal<F>, param: Option<Parametrization<F>>, meta: VarietyMeta) -> Result<Self> {
        ideal.require_homogeneous()?;
        if let Some(p) = &param {
            if p.forms().len() != ideal.ring().nvars() {
                return Err(GeomError::Precondition(format!(
                    "parametrization has {} forms for {} coordinates",
                    p.forms().len(),
                    ideal.ring().nvars()
                )));
            }
        }
        Ok(ProjectiveVariety { ideal, param, meta })
    }

    pub fn ring(&self) -> &Ring<F> {
        self.ideal.ring()
    }

    pub fn field(&self) -> &F {
        self.ring().field()
    }

    /// `r`.
    pub fn ambient(&self) -> usize {
        self.ring().nvars() - 1
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn parametrization(&self) -> Option<&Parametrization<F>> {
        self.param.as_ref()
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    pub fn contains(&self, p: &ProjectivePoint<F>) -> bool {
        vanishes_at(&self.ideal, p.coords())
    }

    /// Every generator pulls back to zero under the parametrization.
    pub fn parametrization_consistent(&self) -> bool {
        match &self.param {
            None => true,
            Some(p) => self.ideal.generators().iter().all(|g| p.pull_back(g).is_zero()),
        }
    }

    pub fn hilbert(&self, budget: &Budget) -> Result<HilbertInvariants> {
        Ok(entloc_algebra::hilbert_invariants(&self.ideal, budget)?)
    }

    pub fn with_meta(mut self, meta: VarietyMeta) -> Self {
        self.meta = meta;
        self
    }
}

pub fn vanishes_at<F: Field>(ideal: &Ideal<F>, point: &[F::Elem]) -> bool {
    let field = ideal.ring().field();
    ideal.generators().iter().all(|g| field.is_zero(&g.eval(point)))
}

/// The standard ambient ring `x_0..x_r` with grevlex order.
pub fn ambient_ring<F: Field>(field: &F, r: usize) -> Ring<F> {
    PolyRing::with_prefix(field.clone(), "x", r + 1, MonomialOrder::Grevlex)
}

/// A point of `ℙ^r`, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<F: Field> {
    field: F,
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !field.is_zero(c))
            .ok_or_else(|| GeomError::Precondition("zero vector is not a projective point".into()))?;
        let inv = field.inv(lead).expect("nonzero");
        let coords = coords.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(ProjectivePoint {
            field: field.clone(),
            coords,
        })
    }

    /// Point with every coordinate nonzero, drawn from `field.random`.
    pub fn random<R: Rng + ?Sized>(field: &F, r: usize, rng: &mut R) -> Self {
        let coords = (0..=r)
            .map(|_| loop {
                let c = field.random(rng);
                if !field.is_zero(&c) {
                    break c;
                }
            })
            .collect();
        ProjectivePoint::new(field, coords).expect("nonzero coordinates")
    }

    pub fn coordinate_point(field: &F, r: usize, i: usize) -> Self {
        let coords = (0..=r)
            .map(|j| if j == i { field.one() } else { field.zero() })
            .collect();
        ProjectivePoint {
            field: field.clone(),
            coords,
        }
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn has_zero_coordinate(&self) -> bool {
        self.coords.iter().any(|c| self.field.is_zero(c))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| self.field.format(c)).collect()
    }
}

impl<F: Field> fmt::Debug for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(" : "))
    }
}

/// `a + t b` as a projective point, or `None` when it is the zero vector.
pub fn combine<F: Field>(
    a: &ProjectivePoint<F>,
    b: &ProjectivePoint<F>,
    t: &F::Elem,
) -> Option<ProjectivePoint<F>> {
    let field = a.field();
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| field.add(x, &field.mul(t, y)))
        .collect();
    ProjectivePoint::new(field, coords).ok()
}

/// A linear subspace of `ℙ^r` spanned by the rows of a full-rank matrix.
#[derive(Clone, Debug)]
pub struct LinearSubspace<F: Field> {
    basis: Matrix<F>,
}

impl<F: Field> LinearSubspace<F> {
    pub fn new(basis: Matrix<F>) -> Result<Self> {
        if basis.rows() == 0 || basis.rank() != basis.rows() {
            return Err(GeomError::Precondition("spanning rows are dependent".into()));
        }
        Ok(LinearSubspace { basis })
    }

    pub fn from_points(points: &[ProjectivePoint<F>]) -> Result<Self> {
        let field = points
            .first()
            .ok_or_else(|| GeomError::Precondition("no spanning points".into()))?
            .field()
            .clone();
        LinearSubspace::new(Matrix::from_rows(
            &field,
            points.iter().map(|p| p.coords().to_vec()).collect(),
        ))
    }

    /// The subspace cut out by linear forms (one coefficient row each).
    pub fn from_equations(field: &F, r: usize, forms: &Matrix<F>) -> Result<Self> {
        let rows = if forms.rows() == 0 {
            Matrix::identity(field, r + 1).to_rows()
        } else {
            forms.kernel_basis()
        };
        LinearSubspace::new(Matrix::from_rows(field, rows))
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows() - 1
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols() - 1
    }

    pub fn contains(&self, p: &ProjectivePoint<F>) -> bool {
        let field = self.basis.field();
        let extended = self
            .basis
            .vstack(&Matrix::from_rows(field, vec![p.coords().to_vec()]));
        extended.rank() == self.basis.rows()
    }

    /// Coefficient rows of a basis of the linear forms vanishing on the
    /// subspace.
    pub fn equation_matrix(&self) -> Matrix<F> {
        let field = self.basis.field();
        Matrix::from_rows(field, self.basis.kernel_basis())
    }

    pub fn equations(&self, ring: &Ring<F>) -> Vec<Polynomial<F>> {
        self.basis
            .kernel_basis()
            .iter()
            .map(|c| linear_form(ring, c))
            .collect()
    }

    pub fn ideal(&self, ring: &Ring<F>) -> Ideal<F> {
        Ideal::new(ring, self.equations(ring))
    }

    /// A random combination of the spanning rows.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> ProjectivePoint<F> {
        let field = self.basis.field();
        loop {
            let weights: Vec<F::Elem> = (0..self.basis.rows()).map(|_| field.random(rng)).collect();
            let coords = self.basis.transpose().mul_vec(&weights);
            if let Ok(p) = ProjectivePoint::new(field, coords) {
                return p;
            }
        }
    }
}
