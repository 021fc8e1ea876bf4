//! Homomorphisms between canonical groups and their kernels, images and
//! cokernels, with explicit generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::AbGroup;
use crate::error::{Error, Result};

/// The group `L / R` for a lattice `L ⊆ Z^n` spanned by some generator
/// columns and a relation lattice `R ⊆ L`, brought into canonical form.
///
/// Keeps enough of the reduction to express canonical generators in ambient
/// coordinates and to map ambient vectors of `L` back to canonical
/// coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    group: AbGroup,
    /// Canonical generators as ambient column vectors.
    generators: IntMatrix,
    lattice_u: IntMatrix,
    lattice_diag: Vec<BigInt>,
    quotient_u: IntMatrix,
    /// Position in the reduced basis of each canonical generator.
    order: Vec<usize>,
}

impl Subquotient {
    /// `gens`: n×k matrix whose columns span `L`; `rels`: n×m matrix whose
    /// columns span `R`, which must lie inside `L`.
    pub fn new(gens: &IntMatrix, rels: &IntMatrix) -> Result<Self> {
        let n = gens.rows();
        assert_eq!(rels.rows(), n, "ambient dimension mismatch");
        let s = smith_normal_form(gens);
        let r = s.rank();
        let lattice_diag: Vec<BigInt> = s.diagonal().into_iter().take(r).collect();
        let basis = (gens * &s.v).select_columns(&(0..r).collect::<Vec<_>>());

        let w = &s.u * rels;
        let mut x = IntMatrix::zeros(r, rels.cols());
        for j in 0..rels.cols() {
            for i in 0..n {
                let wij = &w[(i, j)];
                if i >= r {
                    if !wij.is_zero() {
                        return Err(Error::IllFormedHom("relation outside the generated lattice".into()));
                    }
                    continue;
                }
                let (q, rem) = wij.div_rem(&lattice_diag[i]);
                if !rem.is_zero() {
                    return Err(Error::IllFormedHom("relation outside the generated lattice".into()));
                }
                x[(i, j)] = q;
            }
        }

        let s2 = smith_normal_form(&x);
        let diag2 = s2.diagonal();
        let orders: Vec<BigInt> = (0..r).map(|i| diag2.get(i).cloned().unwrap_or_default()).collect();
        let mut order: Vec<usize> = (0..r).filter(|&i| orders[i].is_zero()).collect();
        order.extend((0..r).filter(|&i| orders[i] > BigInt::from(1)));
        let free = order.iter().filter(|&&i| orders[i].is_zero()).count();
        let group = AbGroup {
            rank: free,
            torsion: order[free..].iter().map(|&i| orders[i].clone()).collect(),
        };
        let generators = (&basis * &s2.u_inv).select_columns(&order);
        Ok(Subquotient { group, generators, lattice_u: s.u, lattice_diag, quotient_u: s2.u, order })
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    /// Canonical generators as columns in ambient coordinates.
    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice_u.rows()
    }

    /// Canonical (reduced) coordinates of an ambient vector, or `None` when
    /// the vector is not in the lattice `L`.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.lattice_u.mul_vec(v);
        let r = self.lattice_diag.len();
        if w[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = Vec::with_capacity(r);
        for (wi, d) in w.iter().zip(&self.lattice_diag) {
            let (q, rem) = wi.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            x.push(q);
        }
        let y = self.quotient_u.mul_vec(&x);
        let mut c: Vec<BigInt> = self.order.iter().map(|&i| y[i].clone()).collect();
        self.group.reduce(&mut c);
        Some(c)
    }
}

/// A homomorphism between groups in canonical form. `matrix` has one column
/// per domain generator holding its image in codomain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    domain: AbGroup,
    codomain: AbGroup,
    matrix: IntMatrix,
}

impl Homomorphism {
    pub fn new(domain: AbGroup, codomain: AbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_generators() || matrix.cols() != domain.num_generators() {
            return Err(Error::IllFormedHom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_generators(),
                domain.num_generators()
            )));
        }
        let mut matrix = matrix;
        for j in 0..domain.num_generators() {
            let d = domain.generator_order(j);
            let col = matrix.column(j);
            if !d.is_zero() {
                let scaled: Vec<BigInt> = col.iter().map(|x| x * &d).collect();
                if !codomain.is_zero_element(&scaled) {
                    return Err(Error::IllFormedHom(format!(
                        "generator {j} has order {d} but its image does not"
                    )));
                }
            }
            let mut col = col;
            codomain.reduce(&mut col);
            for (i, v) in col.into_iter().enumerate() {
                matrix[(i, j)] = v;
            }
        }
        Ok(Homomorphism { domain, codomain, matrix })
    }

    pub fn zero(domain: AbGroup, codomain: AbGroup) -> Self {
        let matrix = IntMatrix::zeros(codomain.num_generators(), domain.num_generators());
        Homomorphism { domain, codomain, matrix }
    }

    pub fn domain(&self) -> &AbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.matrix.mul_vec(v);
        self.codomain.reduce(&mut out);
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Homomorphism) -> Result<Homomorphism> {
        if first.codomain != self.domain {
            return Err(Error::IllFormedHom("composition of mismatched maps".into()));
        }
        Homomorphism::new(first.domain.clone(), self.codomain.clone(), &self.matrix * &first.matrix)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_element(&self.matrix.column(j)))
    }
}

/// Kernel, image and cokernel of a homomorphism with explicit generators.
#[derive(Clone, Debug)]
pub struct HomAnalysis {
    /// Subquotient of domain coordinates.
    pub kernel: Subquotient,
    /// Subquotient of codomain coordinates.
    pub image: Subquotient,
    /// Quotient of codomain coordinates; `coords_of` is the projection.
    pub cokernel: Subquotient,
}

impl HomAnalysis {
    pub fn groups(&self) -> (AbGroup, AbGroup, AbGroup) {
        (self.kernel.group().clone(), self.image.group().clone(), self.cokernel.group().clone())
    }

    /// The canonical injection of the kernel into the domain.
    pub fn kernel_inclusion(&self, f: &Homomorphism) -> Homomorphism {
        Homomorphism::new(self.kernel.group().clone(), f.domain().clone(), self.kernel.generators().clone())
            .expect("kernel generators form a well-defined map")
    }
}

pub fn analyze_hom(f: &Homomorphism) -> Result<HomAnalysis> {
    // re-validate: the fields are private, but a Homomorphism may have been
    // cloned from an earlier, differently-reduced state
    let f = Homomorphism::new(f.domain.clone(), f.codomain.clone(), f.matrix.clone())?;
    let na = f.domain.num_generators();
    let nb = f.codomain.num_generators();
    let rel_b = f.codomain.relation_matrix();
    let rel_a = f.domain.relation_matrix();
    let presented = f.matrix.hconcat(&rel_b);

    let s = smith_normal_form(&presented);
    let r = s.rank();
    let kernel_cols: Vec<Vec<BigInt>> =
        (r..presented.cols()).map(|j| s.v.column(j)[..na].to_vec()).collect();
    let kernel_gens = IntMatrix::from_columns(na, &kernel_cols);
    let kernel = Subquotient::new(&kernel_gens, &rel_a)?;

    let image = Subquotient::new(&presented, &rel_b)?;
    let cokernel = Subquotient::new(&IntMatrix::identity(nb), &presented)?;
    Ok(HomAnalysis { kernel, image, cokernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(dom: &str, cod: &str, rows: Vec<Vec<i64>>) -> Homomorphism {
        let dom: AbGroup = dom.parse().unwrap();
        let cod: AbGroup = cod.parse().unwrap();
        let m = if rows.is_empty() {
            IntMatrix::zeros(cod.num_generators(), dom.num_generators())
        } else {
            IntMatrix::from_rows(rows)
        };
        Homomorphism::new(dom, cod, m).unwrap()
    }

    fn groups(f: &Homomorphism) -> (String, String, String) {
        let (k, i, c) = analyze_hom(f).unwrap().groups();
        (k.to_string(), i.to_string(), c.to_string())
    }

    #[test]
    fn multiplication_by_k() {
        for k in [1i64, 2, 7, -3] {
            let f = hom("Z", "Z", vec![vec![k]]);
            let (ker, im, cok) = analyze_hom(&f).unwrap().groups();
            assert!(ker.is_trivial());
            assert_eq!(im, AbGroup::free(1));
            assert_eq!(cok, AbGroup::cyclic(k));
        }
    }

    #[test]
    fn diagonal_two_three() {
        let f = hom("Z^2", "Z^2", vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(groups(&f), ("0".into(), "Z^2".into(), "Z/6".into()));
    }

    #[test]
    fn zero_map_into_torsion() {
        let f = hom("Z", "Z/5", vec![]);
        assert_eq!(groups(&f), ("Z".into(), "0".into(), "Z/5".into()));
    }

    #[test]
    fn torsion_to_torsion() {
        // Z/4 -> Z/4, x -> 2x: kernel Z/2, image Z/2, cokernel Z/2
        let f = hom("Z/4", "Z/4", vec![vec![2]]);
        assert_eq!(groups(&f), ("Z/2".into(), "Z/2".into(), "Z/2".into()));
        // Z -> Z/6, 1 -> 2: kernel 3Z, image Z/3, cokernel Z/2
        let g = hom("Z", "Z/6", vec![vec![2]]);
        assert_eq!(groups(&g), ("Z".into(), "Z/3".into(), "Z/2".into()));
    }

    #[test]
    fn ill_formed_is_rejected() {
        let dom: AbGroup = "Z/2".parse().unwrap();
        let cod: AbGroup = "Z".parse().unwrap();
        let err = Homomorphism::new(dom, cod, IntMatrix::from_rows([[1]])).unwrap_err();
        assert!(matches!(err, Error::IllFormedHom(_)));
    }

    #[test]
    fn kernel_inclusion_composes_to_zero() {
        let f = hom("Z^3", "Z^2 + Z/4", vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 0]]);
        let a = analyze_hom(&f).unwrap();
        let inc = a.kernel_inclusion(&f);
        assert!(f.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn cokernel_projection_is_surjective_coordinates() {
        let f = hom("Z", "Z/4 + Z/8", vec![vec![2], vec![4]]);
        let a = analyze_hom(&f).unwrap();
        let cok = a.cokernel.group().clone();
        let proj: Vec<Vec<BigInt>> = (0..2)
            .map(|i| {
                let mut e = vec![BigInt::zero(); 2];
                e[i] = BigInt::from(1);
                a.cokernel.coords_of(&e).unwrap()
            })
            .collect();
        // image of f maps to zero
        let img = a.cokernel.coords_of(&[BigInt::from(2), BigInt::from(4)]).unwrap();
        assert!(cok.is_zero_element(&img));
        assert_eq!(proj.len(), 2);
        assert_eq!(cok.torsion_order(), BigInt::from(16));
    }
}
