//! The Ehresmann category `C(S, E)`, semigroup and category algebras over ℚ, and the Stein transform.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ehresmann::{self, check_axioms, EhresmannReport, Semilattice, Side};
use crate::error::{Error, Result};
use crate::green::{self, GreenStructure};
use crate::monoid::MulTable;
use crate::order::PartialOrder;
use crate::rational::{Rational, RationalMatrix};

/// Largest algebra dimension with materialized structure constants.
pub const MAX_ALGEBRA_DIM: usize = 250;

/// Up to this size the Stein map is checked on every pair of basis elements.
pub const EXHAUSTIVE_STEIN: usize = 250;

/// Random pairs checked above [`EXHAUSTIVE_STEIN`].
pub const STEIN_SAMPLES: usize = 100_000;

/// Objects `E`, arrows `S`, with `x: x⁺ → x*` and composition the product when `x* = y⁺`.
#[derive(Debug, Clone)]
pub struct EhresmannCategory {
    objects: Vec<u32>,
    plus: Vec<u32>,
    star: Vec<u32>,
    hom: BTreeMap<(u32, u32), Vec<u32>>,
}

/// Result of the EI test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EiCheck {
    pub is_ei: bool,
    /// A non-invertible endomorphism, minimal by (object, element).
    pub witness: Option<u32>,
}

impl EhresmannCategory {
    pub fn build(s: &MulTable, e: &Semilattice) -> Result<Self> {
        EhresmannCategory::from_report(s, e, &check_axioms(s, e))
    }

    pub fn from_report(s: &MulTable, e: &Semilattice, report: &EhresmannReport) -> Result<Self> {
        if !report.is_ehresmann() {
            return Err(Error::State("the category needs L1, L2, R1 and R2".into()));
        }
        let plus = report.plus()?.to_vec();
        let star = report.star()?.to_vec();
        let mut hom: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        for x in 0..s.size() as u32 {
            hom.entry((plus[x as usize], star[x as usize])).or_default().push(x);
        }
        Ok(EhresmannCategory { objects: e.members().to_vec(), plus, star, hom })
    }

    pub fn objects(&self) -> &[u32] {
        &self.objects
    }

    pub fn plus(&self, x: u32) -> u32 {
        self.plus[x as usize]
    }

    pub fn star(&self, x: u32) -> u32 {
        self.star[x as usize]
    }

    pub fn hom(&self, from: u32, to: u32) -> &[u32] {
        self.hom.get(&(from, to)).map_or(&[], Vec::as_slice)
    }

    /// Non-empty hom-sets keyed by `(source, target)`.
    pub fn hom_sets(&self) -> &BTreeMap<(u32, u32), Vec<u32>> {
        &self.hom
    }

    /// `x ∘ y` (first `x`, then `y`) when `x* = y⁺`.
    pub fn compose(&self, s: &MulTable, x: u32, y: u32) -> Option<u32> {
        (self.star(x) == self.plus(y)).then(|| s.mul(x, y))
    }

    /// Every arrow lies in exactly one hom-set, and composites land in the expected hom-set.
    pub fn check_invariants(&self, s: &MulTable) -> bool {
        let total: usize = self.hom.values().map(Vec::len).sum();
        if total != s.size() {
            return false;
        }
        let n = s.size() as u32;
        (0..n).all(|x| {
            (0..n).all(|y| match self.compose(s, x, y) {
                Some(xy) => self.plus(xy) == self.plus(x) && self.star(xy) == self.star(y),
                None => true,
            })
        })
    }

    /// Whether each endomorphism monoid `hom(e, e)` is a group.
    pub fn is_ei(&self, s: &MulTable) -> EiCheck {
        for &obj in &self.objects {
            let endo = self.hom(obj, obj);
            for &x in endo {
                let invertible = endo.iter().any(|&y| s.mul(x, y) == obj && s.mul(y, x) == obj);
                if !invertible {
                    return EiCheck { is_ei: false, witness: Some(x) };
                }
            }
        }
        EiCheck { is_ei: true, witness: None }
    }
}

type Sparse = BTreeMap<u32, Rational>;

/// A finite-dimensional algebra over ℚ given by structure constants on a basis.
#[derive(Debug, Clone)]
pub struct RationalAlgebra {
    dim: usize,
    /// `products[i·dim + j]` expresses `b_i b_j` in the basis.
    products: Vec<Vec<(u32, Rational)>>,
}

impl RationalAlgebra {
    pub fn from_products(dim: usize, products: Vec<Vec<(u32, Rational)>>) -> Result<Self> {
        if dim > MAX_ALGEBRA_DIM {
            return Err(Error::CapExceeded { cap: MAX_ALGEBRA_DIM });
        }
        assert_eq!(products.len(), dim * dim, "structure constant shape");
        Ok(RationalAlgebra { dim, products })
    }

    /// The semigroup algebra `ℚ[S]`.
    pub fn semigroup(s: &MulTable) -> Result<Self> {
        let d = s.size();
        if d > MAX_ALGEBRA_DIM {
            return Err(Error::CapExceeded { cap: MAX_ALGEBRA_DIM });
        }
        let products = s.raw().iter().map(|&k| alloc::vec![(k, Rational::one())]).collect();
        RationalAlgebra::from_products(d, products)
    }

    /// The category algebra: composable products survive, the rest are zero.
    pub fn category(cat: &EhresmannCategory, s: &MulTable) -> Result<Self> {
        let d = s.size();
        if d > MAX_ALGEBRA_DIM {
            return Err(Error::CapExceeded { cap: MAX_ALGEBRA_DIM });
        }
        let mut products = Vec::with_capacity(d * d);
        for x in 0..d as u32 {
            for y in 0..d as u32 {
                products.push(match cat.compose(s, x, y) {
                    Some(k) => alloc::vec![(k, Rational::one())],
                    None => Vec::new(),
                });
            }
        }
        RationalAlgebra::from_products(d, products)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: u32, j: u32) -> &[(u32, Rational)] {
        &self.products[i as usize * self.dim + j as usize]
    }

    fn mul_sparse(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&i, a) in u {
            for (&j, b) in v {
                for (k, c) in self.basis_product(i, j) {
                    let entry = out.entry(*k).or_insert_with(Rational::zero);
                    *entry += a * b * c;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
    pub fn is_associative(&self) -> bool {
        let d = self.dim as u32;
        let basis = |i: u32| Sparse::from([(i, Rational::one())]);
        let as_sparse = |v: &[(u32, Rational)]| v.iter().cloned().collect::<Sparse>();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let ij = as_sparse(self.basis_product(i, j));
                (0..d).all(|k| {
                    let jk = as_sparse(self.basis_product(j, k));
                    self.mul_sparse(&ij, &basis(k)) == self.mul_sparse(&basis(i), &jk)
                })
            })
        })
    }

    /// `Tr(L_{b_k})` for each basis element.
    fn left_traces(&self) -> Vec<Rational> {
        (0..self.dim as u32)
            .map(|k| {
                let mut t = Rational::zero();
                for s in 0..self.dim as u32 {
                    for (idx, c) in self.basis_product(k, s) {
                        if *idx == s {
                            t += c;
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// The trace form `T[i][j] = Tr(L_{b_i b_j})`.
    pub fn trace_form(&self) -> RationalMatrix {
        let tr = self.left_traces();
        RationalMatrix::from_fn(self.dim, self.dim, |i, j| {
            let mut v = Rational::zero();
            for (k, c) in self.basis_product(i as u32, j as u32) {
                v += c * &tr[*k as usize];
            }
            v
        })
    }

    /// Dimension of the radical: in characteristic 0 it is the kernel of the trace form.
    pub fn radical_dim(&self) -> usize {
        self.dim - self.trace_form().rank()
    }
}

/// The order behind the Stein map: `≤_r` for [`Side::Left`], `≤_l` for [`Side::Right`].
pub fn stein_order(s: &MulTable, e: &Semilattice, report: &EhresmannReport, side: Side) -> Result<PartialOrder> {
    match side {
        Side::Left if report.is_left_restriction() => ehresmann::leq_r(s, e, report),
        Side::Right if report.is_right_restriction() => ehresmann::leq_l(s, e, report),
        _ => Err(Error::State(format!("S is not {}-restriction with respect to E", side.name()))),
    }
}

/// Matrix of `x ↦ Σ_{a ≤ x} a`; column `x` holds the coefficients of the image of `x`.
pub fn stein_transform(s: &MulTable, e: &Semilattice, side: Side) -> Result<RationalMatrix> {
    let report = check_axioms(s, e);
    Ok(stein_order(s, e, &report, side)?.zeta_matrix())
}

/// Exact inverse of the zeta matrix, from the Möbius recursion.
pub fn mobius_inverse(order: &PartialOrder) -> RationalMatrix {
    order.mobius_matrix()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinCheck {
    pub multiplicative: bool,
    pub unitriangular: bool,
    pub inverse_is_mobius: bool,
    /// First pair `(x, y)` where `φ(x)φ(y) ≠ φ(xy)`.
    pub failure: Option<(u32, u32)>,
    pub pairs_checked: usize,
}

impl SteinCheck {
    pub fn holds(&self) -> bool {
        self.multiplicative && self.unitriangular && self.inverse_is_mobius
    }
}

/// Checks that the Stein map is an algebra isomorphism `ℚ[S] → ℚ[C(S, E)]`.
pub fn verify_stein(s: &MulTable, e: &Semilattice, side: Side) -> Result<SteinCheck> {
    let report = check_axioms(s, e);
    let order = stein_order(s, e, &report, side)?;
    let cat = EhresmannCategory::from_report(s, e, &report)?;
    let n = s.size();
    let downs: Vec<Vec<u32>> = (0..n as u32).map(|x| order.down_set(x).ones().map(|a| a as u32).collect()).collect();

    let mut lhs = alloc::vec![0i64; n];
    let check = |x: u32, y: u32, lhs: &mut Vec<i64>| -> bool {
        lhs.iter_mut().for_each(|v| *v = 0);
        for &a in &downs[x as usize] {
            for &b in &downs[y as usize] {
                if let Some(ab) = cat.compose(s, a, b) {
                    lhs[ab as usize] += 1;
                }
            }
        }
        let xy = s.mul(x, y);
        (0..n).all(|c| lhs[c] == i64::from(order.leq(c as u32, xy)))
    };
    let mut failure = None;
    let mut pairs_checked = 0;
    if n <= EXHAUSTIVE_STEIN {
        'outer: for x in 0..n as u32 {
            for y in 0..n as u32 {
                pairs_checked += 1;
                if !check(x, y, &mut lhs) {
                    failure = Some((x, y));
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e17);
        for _ in 0..STEIN_SAMPLES {
            let (x, y) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            pairs_checked += 1;
            if !check(x, y, &mut lhs) {
                failure = Some((x, y));
                break;
            }
        }
    }

    let zeta = order.zeta_matrix();
    let unitriangular = zeta.is_unitriangular_in(&order.linear_extension());
    let mobius = mobius_inverse(&order);
    // Elimination is cubic; above the exhaustive range the product check suffices.
    let inverse_is_mobius = if n <= EXHAUSTIVE_STEIN {
        zeta.inverse().is_some_and(|inv| inv == mobius)
    } else {
        zeta.mul(&mobius) == RationalMatrix::identity(n)
    };
    Ok(SteinCheck { multiplicative: failure.is_none(), unitriangular, inverse_is_mobius, failure, pairs_checked })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCheck {
    pub dim: usize,
    pub radical: usize,
    pub reg_size: usize,
    /// Radical dimension of `ℚ[Reg_E(S)]`.
    pub reg_radical: usize,
}

impl QuotientCheck {
    pub fn holds(&self) -> bool {
        self.dim - self.radical == self.reg_size && self.reg_radical == 0
    }
}

/// Dimension-level check of `ℚ[S]/Rad ≅ ℚ[Reg_E(S)]`.
pub fn check_semisimple_quotient(s: &MulTable, e: &Semilattice) -> Result<QuotientCheck> {
    let report = check_axioms(s, e);
    if !(report.is_left_restriction() || report.is_right_restriction()) {
        return Err(Error::State("S must be left or right restriction with respect to E".into()));
    }
    let cat = EhresmannCategory::from_report(s, e, &report)?;
    if let Some(w) = cat.is_ei(s).witness {
        return Err(Error::State(format!("C(S, E) is not an EI-category (element {w} is a non-invertible endomorphism)")));
    }
    let green = GreenStructure::compute(s);
    let reg = ehresmann::reg_e(s, e, &green);
    let reg_table = s.restrict(&reg)?;
    debug_assert!(green::is_inverse(&reg_table, &GreenStructure::compute(&reg_table)));
    let algebra = RationalAlgebra::semigroup(s)?;
    Ok(QuotientCheck {
        dim: s.size(),
        radical: algebra.radical_dim(),
        reg_size: reg.len(),
        reg_radical: RationalAlgebra::semigroup(&reg_table)?.radical_dim(),
    })
}
