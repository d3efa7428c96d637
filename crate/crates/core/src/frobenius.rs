//! Frobenius modules, unit-root subspaces and the splittings they induce, plus
//! the lifting of a splitting from the abelian part to a semiabelian variety.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{Padic, PadicMatrix, COMPARISON_BUFFER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleLabel {
    A,
    B,
    G,
    T,
    Gamma,
}

/// A de Rham space with Frobenius `phi` and the invariant differentials as a
/// column basis `hodge_sub`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusModule {
    pub label: ModuleLabel,
    pub phi: PadicMatrix,
    pub hodge_sub: PadicMatrix,
    /// Standard basis columns completing `hodge_sub` to a basis.
    completion: PadicMatrix,
    /// Coordinates on the quotient by `hodge_sub` (rows), relative to `completion`.
    quot: PadicMatrix,
}

impl FrobeniusModule {
    pub fn new(label: ModuleLabel, phi: PadicMatrix, hodge_sub: PadicMatrix) -> Result<FrobeniusModule> {
        let n = phi.rows();
        if !phi.is_square() || hodge_sub.rows() != n {
            return Err(Error::InvalidInput("phi must be square and hodge_sub must have dim rows".into()));
        }
        let p = phi.p();
        let prec = phi.min_prec().min(hodge_sub.min_prec());
        let tol = prec - COMPARISON_BUFFER;
        let identity = PadicMatrix::identity(p, n, prec);
        match label {
            ModuleLabel::T if !phi.agrees_mod(&identity.scale(&Padic::from_int(p, p as i64, prec)), tol) => {
                return Err(Error::InvalidInput("torus Frobenius must be p times the identity".into()));
            }
            ModuleLabel::Gamma if !phi.agrees_mod(&identity, tol) => {
                return Err(Error::InvalidInput("Frobenius on Hom(Gamma, K) must be the identity".into()));
            }
            _ => {}
        }
        let h = hodge_sub.cols();
        if hodge_sub.rank(tol) != h {
            return Err(Error::InvalidInput("hodge_sub columns are dependent".into()));
        }
        // greedily add standard basis vectors that keep the span independent
        let mut basis = hodge_sub.clone();
        let mut extra: Vec<Vec<Padic>> = Vec::new();
        for j in 0..n {
            if basis.cols() == n {
                break;
            }
            let e: Vec<Padic> = (0..n).map(|i| Padic::from_int(p, (i == j) as i64, prec)).collect();
            let cand = basis.hstack(&PadicMatrix::from_columns(p, n, std::slice::from_ref(&e)));
            if cand.rank(tol) == cand.cols() {
                basis = cand;
                extra.push(e);
            }
        }
        let completion = PadicMatrix::from_columns(p, n, &extra);
        let inv = basis.inverse()?;
        let quot = inv.block(h, n, 0, n);
        Ok(FrobeniusModule {
            label,
            phi,
            hodge_sub,
            completion,
            quot,
        })
    }

    pub fn p(&self) -> u64 {
        self.phi.p()
    }

    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    pub fn hodge_dim(&self) -> usize {
        self.hodge_sub.cols()
    }

    /// Dimension of the quotient `H(X)` of the de Rham space by `Inv(X)`.
    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.hodge_dim()
    }

    pub fn quot(&self) -> &PadicMatrix {
        &self.quot
    }

    /// Lifts of the quotient basis vectors.
    pub fn completion(&self) -> &PadicMatrix {
        &self.completion
    }

    pub fn working_prec(&self) -> i64 {
        self.phi.min_prec().min(self.hodge_sub.min_prec())
    }
}

/// Column basis of the span of `m` restricted to unit pivots, normalized so
/// that the pivot rows form an identity block.
fn unit_column_basis(m: &PadicMatrix) -> (PadicMatrix, Vec<usize>) {
    let (r, pivots) = m.transpose().rref(1);
    (r.block(0, pivots.len(), 0, m.rows()).transpose(), pivots)
}

/// Number of eigenvalues of `phi` that are p-adic units.
pub fn slope_zero_multiplicity(phi: &PadicMatrix) -> usize {
    let n = phi.rows();
    phi.pow(n.max(1) as u64).rank(1)
}

/// The slope-0 subspace `W`, as a column basis.
pub fn unit_root_subspace(m: &FrobeniusModule) -> Result<PadicMatrix> {
    let p = m.p();
    let n = m.dim();
    let expected = m.quotient_dim();
    let found = slope_zero_multiplicity(&m.phi);
    if found != expected {
        return Err(Error::NotOrdinary { found, expected });
    }
    let prec = m.working_prec();
    if expected == 0 {
        return Ok(PadicMatrix::zeros(p, n, 0, prec));
    }
    if m.phi.min_valuation().unwrap_or(0) < 0 {
        return Err(Error::InvalidInput("Frobenius matrix must be integral".into()));
    }
    let target = prec - COMPARISON_BUFFER;
    let mut power = m.phi.clone();
    let (mut basis, mut pivots) = unit_column_basis(&power);
    // phi^(2^j) kills the positive-slope part to order p^(2^j)
    let max_rounds = 2 * (prec.max(2) as u64).ilog2() as usize + 8;
    for _ in 0..max_rounds {
        power = power.mul(&power);
        let (next, next_pivots) = unit_column_basis(&power);
        let stable = next_pivots == pivots && next.agrees_mod(&basis, target);
        basis = next;
        pivots = next_pivots;
        if stable {
            let check = m.phi.mul(&basis);
            let (again, _) = unit_column_basis(&check);
            if again.agrees_mod(&basis, target) {
                return Ok(basis);
            }
        }
    }
    Err(Error::PrecisionExhausted("unit-root iteration did not stabilize".into()))
}

/// A splitting of `0 -> Inv -> H^1_dR -> H -> 0`: the section `r` and the
/// retraction `s` with `ker s = im r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub r: PadicMatrix,
    pub s: PadicMatrix,
}

impl Splitting {
    /// Builds the pair from a section `r` of the quotient map.
    pub fn from_section(m: &FrobeniusModule, r: PadicMatrix) -> Result<Splitting> {
        let s = retraction_along(m, &r)?;
        Ok(Splitting { r, s })
    }

    /// Checks `quot r = 1`, `s hodge = 1`, `s r = 0` modulo `p^k`.
    pub fn is_splitting_of(&self, m: &FrobeniusModule, k: i64) -> bool {
        let p = m.p();
        let q = m.quot().mul(&self.r);
        let sh = self.s.mul(&m.hodge_sub);
        let sr = self.s.mul(&self.r);
        q.agrees_mod(&PadicMatrix::identity(p, m.quotient_dim(), k + 1), k)
            && sh.agrees_mod(&PadicMatrix::identity(p, m.hodge_dim(), k + 1), k)
            && sr.vanishes_mod(k)
    }
}

/// The projection onto `Inv` along the span of `r`.
fn retraction_along(m: &FrobeniusModule, r: &PadicMatrix) -> Result<PadicMatrix> {
    let n = m.dim();
    let h = m.hodge_dim();
    let both = m.hodge_sub.hstack(r);
    if both.cols() != n || both.rank(m.working_prec() - COMPARISON_BUFFER) < n {
        return Err(Error::DegenerateFiltration);
    }
    Ok(both.inverse()?.block(0, h, 0, n))
}

pub fn unit_root_splitting(m: &FrobeniusModule) -> Result<Splitting> {
    let w = unit_root_subspace(m)?;
    let qw = m.quot().mul(&w);
    if qw.rank(m.working_prec() - COMPARISON_BUFFER) < qw.cols() {
        return Err(Error::DegenerateFiltration);
    }
    let r = w.mul(&qw.inverse()?);
    let s = retraction_along(m, &r)?;
    Ok(Splitting { r, s })
}

/// Whether the column span of `sub` lies in that of `big`, modulo `p^k`.
pub fn span_contained(sub: &PadicMatrix, big: &PadicMatrix, k: i64) -> bool {
    let rb = big.rank(k);
    rb == big.hstack(sub).rank(k)
}

pub fn same_span(a: &PadicMatrix, b: &PadicMatrix, k: i64) -> bool {
    a.cols() == b.cols() && span_contained(a, b, k) && span_contained(b, a, k)
}

/// The linear-algebra shadow of the extension `0 -> T -> G -> B -> 0` and the
/// uniformization `0 -> Gamma -> G -> A -> 0`.
///
/// Coordinates: `p_star` embeds `H^1_dR(B)` into `H^1_dR(G)`, `g_star` maps
/// onto `H^1_dR(T)`, `hom_gamma_incl` embeds `Hom(Gamma, K)` into `H^1_dR(A)`
/// and `pi_star` maps `H^1_dR(A)` onto `H^1_dR(G)`. `alpha`, `beta`, `gamma`
/// are expressed in the Hodge and quotient coordinates of the modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiabelianDiagram {
    pub a: FrobeniusModule,
    pub g: FrobeniusModule,
    pub b: FrobeniusModule,
    pub t: FrobeniusModule,
    pub gamma_mod: FrobeniusModule,
    pub alpha: PadicMatrix,
    pub beta: PadicMatrix,
    pub gamma: PadicMatrix,
    pub pi_star: PadicMatrix,
    pub p_star: PadicMatrix,
    pub g_star: PadicMatrix,
    pub hom_gamma_incl: PadicMatrix,
}

/// Solves `x * basis = target` for a basis of full column rank (left division).
fn coords_in(basis: &PadicMatrix, target: &PadicMatrix, tol: i64) -> Result<PadicMatrix> {
    let bt = basis.transpose();
    let gram = bt.mul(basis);
    if gram.rank(tol) < gram.rows() {
        return Err(Error::DiagramInconsistent("basis is degenerate".into()));
    }
    let x = gram.inverse()?.mul(&bt.mul(target));
    if !basis.mul(&x).agrees_mod(target, tol) {
        return Err(Error::DiagramInconsistent("image leaves the expected subspace".into()));
    }
    Ok(x)
}

impl SemiabelianDiagram {
    /// Derives `alpha`, `beta`, `gamma` from the other data and checks the
    /// exactness and Frobenius-compatibility conditions.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        a: FrobeniusModule,
        g: FrobeniusModule,
        b: FrobeniusModule,
        t: FrobeniusModule,
        gamma_mod: FrobeniusModule,
        pi_star: PadicMatrix,
        p_star: PadicMatrix,
        g_star: PadicMatrix,
        hom_gamma_incl: PadicMatrix,
    ) -> Result<SemiabelianDiagram> {
        let tol = [&a, &g, &b, &t, &gamma_mod]
            .iter()
            .map(|m| m.working_prec())
            .chain([pi_star.min_prec(), p_star.min_prec(), g_star.min_prec(), hom_gamma_incl.min_prec()])
            .min()
            .unwrap_or(0)
            - COMPARISON_BUFFER;
        let bad = |m: &str| Error::DiagramInconsistent(m.to_string());
        let shape = |m: &PadicMatrix, r: usize, c: usize| m.rows() == r && m.cols() == c;
        if !shape(&pi_star, g.dim(), a.dim())
            || !shape(&p_star, g.dim(), b.dim())
            || !shape(&g_star, t.dim(), g.dim())
            || !shape(&hom_gamma_incl, a.dim(), gamma_mod.dim())
        {
            return Err(bad("map shapes do not match module dimensions"));
        }
        // exactness of 0 -> B -> G -> T -> 0
        if p_star.rank(tol) != b.dim() || g_star.rank(tol) != t.dim() || !g_star.mul(&p_star).vanishes_mod(tol) {
            return Err(bad("H1(B) -> H1(G) -> H1(T) is not short exact"));
        }
        if b.dim() + t.dim() != g.dim() {
            return Err(bad("dim H1(G) != dim H1(B) + dim H1(T)"));
        }
        // exactness of 0 -> Hom(Gamma,K) -> H1(A) -> H1(G) -> 0
        if hom_gamma_incl.rank(tol) != gamma_mod.dim()
            || pi_star.rank(tol) != g.dim()
            || !pi_star.mul(&hom_gamma_incl).vanishes_mod(tol)
            || gamma_mod.dim() + g.dim() != a.dim()
        {
            return Err(bad("Hom(Gamma,K) -> H1(A) -> H1(G) is not short exact"));
        }
        if !pi_star.mul(&a.phi).agrees_mod(&g.phi.mul(&pi_star), tol) {
            return Err(bad("pi_star does not commute with Frobenius"));
        }
        if !p_star.mul(&b.phi).agrees_mod(&g.phi.mul(&p_star), tol) {
            return Err(bad("p_star does not commute with Frobenius"));
        }
        if !g_star.mul(&g.phi).agrees_mod(&t.phi.mul(&g_star), tol) {
            return Err(bad("g_star does not commute with Frobenius"));
        }
        let alpha = coords_in(&g.hodge_sub, &pi_star.mul(&a.hodge_sub), tol)?;
        if alpha.rank(tol) != alpha.rows() || !alpha.is_square() {
            return Err(bad("alpha: Inv(A) -> Inv(G) is not an isomorphism"));
        }
        if coords_in(&g.hodge_sub, &p_star.mul(&b.hodge_sub), tol).is_err() {
            return Err(bad("p_star does not respect the Hodge filtration"));
        }
        if g_star.mul(&g.hodge_sub).rank(tol) != t.dim() {
            return Err(bad("Inv(G) -> Inv(T) is not surjective"));
        }
        let beta = g.quot().mul(&p_star).mul(b.completion());
        if beta.rank(tol) != beta.rows() || !beta.is_square() {
            return Err(bad("beta: H1(B,O) -> H is not an isomorphism"));
        }
        let gamma = g.quot().mul(&pi_star).mul(a.completion());
        if gamma.rank(tol) != gamma.rows() {
            return Err(bad("gamma: H1(A,O) -> H is not surjective"));
        }
        Ok(SemiabelianDiagram {
            a,
            g,
            b,
            t,
            gamma_mod,
            alpha,
            beta,
            gamma,
            pi_star,
            p_star,
            g_star,
            hom_gamma_incl,
        })
    }

    pub fn working_prec(&self) -> i64 {
        [&self.a, &self.g, &self.b]
            .iter()
            .map(|m| m.working_prec())
            .min()
            .unwrap_or(0)
            .min(self.pi_star.min_prec())
            .min(self.p_star.min_prec())
    }

    /// `p_star r_B beta^{-1} gamma`, the right-hand route of diagram (3).
    pub fn lower_route(&self, r_b: &Splitting) -> Result<PadicMatrix> {
        Ok(self.p_star.mul(&r_b.r).mul(&self.beta.inverse()?).mul(&self.gamma))
    }
}

/// Lifts a splitting of the B-row to one of the A-row.
pub fn lift_splitting(d: &SemiabelianDiagram, r_b: &Splitting) -> Result<Splitting> {
    let tol = d.working_prec() - COMPARISON_BUFFER;
    if !r_b.is_splitting_of(&d.b, tol) {
        return Err(Error::DiagramInconsistent("r_B does not split the Hodge filtration of B".into()));
    }
    let r_g = d.p_star.mul(&r_b.r).mul(&d.beta.inverse()?);
    let s_g = retraction_along(&d.g, &r_g)
        .map_err(|_| Error::DiagramInconsistent("lifted section meets Inv(G)".into()))?;
    let s_a = d.alpha.inverse()?.mul(&s_g).mul(&d.pi_star);
    let ker = s_a.kernel(tol);
    let qk = d.a.quot().mul(&ker);
    if !qk.is_square() || qk.rank(tol) < qk.rows() {
        return Err(Error::DiagramInconsistent("kernel of s_A is not a complement of Inv(A)".into()));
    }
    let r = ker.mul(&qk.inverse()?);
    let lifted = Splitting { r, s: s_a };
    if !d.pi_star.mul(&lifted.r).agrees_mod(&d.lower_route(r_b)?, tol) {
        return Err(Error::DiagramInconsistent("lifted splitting does not close diagram (3)".into()));
    }
    Ok(lifted)
}

/// Outcome of comparing the lifted splitting with the unit-root subspace of A.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub dim_w_a: usize,
    pub dim_h_a: usize,
    pub rank_union: usize,
    /// Smallest valuation of `s_A` applied to the basis of `W_A`.
    pub residual_valuation: i64,
    pub target: i64,
    pub pass: bool,
}

pub fn verify_lift_against_unit_root(d: &SemiabelianDiagram) -> Result<LiftReport> {
    let r_b = unit_root_splitting(&d.b)?;
    let lifted = lift_splitting(d, &r_b)?;
    let w_a = unit_root_subspace(&d.a)?;
    let target = d.working_prec() - COMPARISON_BUFFER;
    let res = lifted.s.mul(&w_a);
    let residual_valuation = res.entries().iter().map(Padic::valuation).min().unwrap_or(target);
    let rank_union = w_a.hstack(&lifted.r).rank(target);
    let pass = residual_valuation >= target && rank_union == w_a.cols() && w_a.cols() == d.a.quotient_dim();
    Ok(LiftReport {
        dim_w_a: w_a.cols(),
        dim_h_a: d.a.quotient_dim(),
        rank_union,
        residual_valuation,
        target,
        pass,
    })
}

/// Free parameters of a block-triangular diagram over a given B-module.
#[derive(Debug, Clone)]
pub struct SyntheticBlocks {
    /// `dim B x t`: how Frobenius on `H^1_dR(G)` mixes the torus part into `H^1_dR(B)`.
    pub mix_g: PadicMatrix,
    /// `dim B x t`: B-coordinates of the lifted torus invariant differentials.
    pub hodge_lift_g: PadicMatrix,
    /// `t x dim G`: how Frobenius on `H^1_dR(A)` mixes `H^1_dR(G)` into `Hom(Gamma, K)`.
    pub mix_a: PadicMatrix,
    /// `t x dim Inv(G)`: `Hom(Gamma, K)`-coordinates of `Inv(A)`.
    pub hodge_lift_a: PadicMatrix,
}

/// Diagram with `H^1_dR(G) = H^1_dR(B) + H^1_dR(T)` and
/// `H^1_dR(A) = Hom(Gamma, K) + H^1_dR(G)` as block coordinates, torus rank `t`.
pub fn synthetic_diagram(b: &FrobeniusModule, t: usize, blocks: &SyntheticBlocks) -> Result<SemiabelianDiagram> {
    let p = b.p();
    let prec = [&blocks.mix_g, &blocks.hodge_lift_g, &blocks.mix_a, &blocks.hodge_lift_a]
        .iter()
        .map(|m| m.min_prec())
        .fold(b.working_prec(), i64::min);
    if prec >= crate::padic::EXACT {
        return Err(Error::InvalidInput("synthetic diagram needs at least one entry".into()));
    }
    let nb = b.dim();
    let hb = b.hodge_dim();
    let ng = nb + t;
    let zero = |r, c| PadicMatrix::zeros(p, r, c, prec);
    let id = |n| PadicMatrix::identity(p, n, prec);
    let p_id = |n| id(n).scale(&Padic::from_int(p, p as i64, prec));

    let phi_g = b.phi.hstack(&blocks.mix_g).vstack(&zero(t, nb).hstack(&p_id(t)));
    let hodge_g = b
        .hodge_sub
        .hstack(&blocks.hodge_lift_g)
        .vstack(&zero(t, hb).hstack(&id(t)));
    let phi_a = id(t).hstack(&blocks.mix_a).vstack(&zero(ng, t).hstack(&phi_g));
    let hodge_a = blocks.hodge_lift_a.vstack(&hodge_g);

    let g = FrobeniusModule::new(ModuleLabel::G, phi_g, hodge_g)?;
    let a = FrobeniusModule::new(ModuleLabel::A, phi_a, hodge_a)?;
    let tm = FrobeniusModule::new(ModuleLabel::T, p_id(t), id(t))?;
    let gm = FrobeniusModule::new(ModuleLabel::Gamma, id(t), zero(t, 0))?;
    let p_star = id(nb).vstack(&zero(t, nb));
    let g_star = zero(t, nb).hstack(&id(t));
    let pi_star = zero(ng, t).hstack(&id(ng));
    let incl = id(t).vstack(&zero(ng, t));
    SemiabelianDiagram::assemble(a, g, b.clone(), tm, gm, pi_star, p_star, g_star, incl)
}

/// Diagram of a rank-one torus with trivial abelian part (the Tate curve):
/// `mix` is the off-diagonal Frobenius entry on `H^1_dR(A)` and `hodge_lift`
/// the `Hom(Gamma, K)`-coordinate of its invariant differential.
pub fn rank_one_torus_diagram(mix: &Padic, hodge_lift: &Padic) -> Result<SemiabelianDiagram> {
    let p = mix.p();
    let prec = mix.prec().min(hodge_lift.prec());
    let empty = PadicMatrix::zeros(p, 0, 0, prec);
    let b = FrobeniusModule::new(ModuleLabel::B, empty.clone(), empty)?;
    let blocks = SyntheticBlocks {
        mix_g: PadicMatrix::zeros(p, 0, 1, prec),
        hodge_lift_g: PadicMatrix::zeros(p, 0, 1, prec),
        mix_a: PadicMatrix::new(p, 1, 1, vec![mix.clone()]),
        hodge_lift_a: PadicMatrix::new(p, 1, 1, vec![hodge_lift.clone()]),
    };
    synthetic_diagram(&b, 1, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u64, r: usize, c: usize, e: &[i64]) -> PadicMatrix {
        PadicMatrix::from_ints(p, r, c, e, 30)
    }

    #[test]
    fn diagonal_slopes() {
        let m = FrobeniusModule::new(ModuleLabel::B, mat(5, 2, 2, &[1, 0, 0, 5]), mat(5, 2, 1, &[0, 1])).unwrap();
        let w = unit_root_subspace(&m).unwrap();
        assert!(w.agrees_mod(&mat(5, 2, 1, &[1, 0]), 25));
        let sp = unit_root_splitting(&m).unwrap();
        assert!(sp.r.agrees_mod(&mat(5, 2, 1, &[1, 0]), 25));
        assert!(sp.s.agrees_mod(&mat(5, 1, 2, &[0, 1]), 25));
    }

    #[test]
    fn torus_has_no_unit_roots() {
        let m = FrobeniusModule::new(ModuleLabel::T, mat(5, 2, 2, &[5, 0, 0, 5]), mat(5, 2, 2, &[1, 0, 0, 1])).unwrap();
        let w = unit_root_subspace(&m).unwrap();
        assert_eq!(w.cols(), 0);
        let sp = unit_root_splitting(&m).unwrap();
        assert_eq!(sp.r.cols(), 0);
    }

    #[test]
    fn supersingular_rejected() {
        // charpoly x^2 + 5
        let m = FrobeniusModule::new(ModuleLabel::B, mat(5, 2, 2, &[0, -5, 1, 0]), mat(5, 2, 1, &[1, 0])).unwrap();
        assert_eq!(unit_root_subspace(&m), Err(Error::NotOrdinary { found: 0, expected: 1 }));
    }

    #[test]
    fn unit_root_of_companion_matrix() {
        // companion matrix of x^2 + 3x + 5
        let phi = mat(5, 2, 2, &[0, -5, 1, -3]);
        let m = FrobeniusModule::new(ModuleLabel::B, phi.clone(), mat(5, 2, 1, &[1, 0])).unwrap();
        let w = unit_root_subspace(&m).unwrap();
        let pw = phi.mul(&w);
        let ratio = pw.get(0, 0).div(w.get(0, 0)).unwrap();
        assert!(ratio.agrees_mod(&Padic::from_int(5, 7, 30), 2));
        assert!(pw.agrees_mod(&w.scale(&ratio), 25));
    }

    fn tate_diagram(y: i64, z: i64) -> SemiabelianDiagram {
        rank_one_torus_diagram(&Padic::from_int(5, y, 30), &Padic::from_int(5, z, 30)).unwrap()
    }

    #[test]
    fn tate_case_w_is_kernel_of_pi_star() {
        let d = tate_diagram(3, 2);
        let w = unit_root_subspace(&d.a).unwrap();
        assert!(w.agrees_mod(&mat(5, 2, 1, &[1, 0]), 25));
        assert!(same_span(&w, &d.pi_star.kernel(25), 25));
        let report = verify_lift_against_unit_root(&d).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn hodge_meeting_w_is_degenerate() {
        let m = FrobeniusModule::new(ModuleLabel::B, mat(5, 2, 2, &[1, 0, 0, 5]), mat(5, 2, 1, &[1, 0])).unwrap();
        assert_eq!(unit_root_splitting(&m), Err(Error::DegenerateFiltration));
    }
}
