//! Static registry of every identity the engine verifies.
//!
//! Each identity carries a stable record id, the anchor label of the
//! result it checks, and the suite that emits it. A full-suite report must
//! contain a record for every entry of [`ALL`].

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    pub suite: &'static str,
    pub statement: &'static str,
}

macro_rules! identities {
    ($( $name:ident = ($suite:literal, $id:literal, $anchor:literal, $statement:literal); )*) => {
        $(
            pub const $name: Identity = Identity {
                id: $id,
                anchor: $anchor,
                suite: $suite,
                statement: $statement,
            };
        )*
        pub const ALL: &[Identity] = &[$($name),*];
    };
}

identities! {
    AXIOMS_TRIPLE = ("axioms", "axioms.triple-matrices", "def:3-structure",
        "I_a orthogonal, skew, I_a^2 = -Id, I_1 I_2 = I_3 cyclically");
    AXIOMS_PHI_SQUARED = ("axioms", "axioms.phi-squared", "def:almost-contact",
        "phi_a^2 X = -X + eta^a(X) xi_a");
    AXIOMS_ETA_OF_REEB = ("axioms", "axioms.eta-of-reeb", "def:almost-contact",
        "eta^a(xi_b) = delta_ab");
    AXIOMS_PHI_OF_REEB = ("axioms", "axioms.phi-of-reeb", "def:almost-contact",
        "phi_a xi_a = 0 and eta^a o phi_a = 0");
    AXIOMS_COMPAT_ETA = ("axioms", "axioms.compat-eta", "eq:compat",
        "eta^a(X) = g(xi_a, X)");
    AXIOMS_COMPAT_METRIC = ("axioms", "axioms.compat-metric", "eq:compat",
        "g(phi_a X, phi_a Y) = g(X,Y) - eta^a(X) eta^a(Y)");
    AXIOMS_OMEGA_SKEW = ("axioms", "axioms.omega-skew", "def:fundamental-form",
        "Omega^a(X,Y) = g(X, phi_a Y) is antisymmetric");
    AXIOMS_REEB_ORTHONORMAL = ("axioms", "axioms.reeb-orthonormal", "def:3-structure",
        "g(xi_a, xi_b) = delta_ab and xi_a tangent");
    AXIOMS_QUATERNION_PHI = ("axioms", "axioms.quaternion-phi", "def:3-structure",
        "phi_t = phi_b phi_c - eta^c (x) xi_b = -phi_c phi_b + eta^b (x) xi_c");
    AXIOMS_QUATERNION_REEB = ("axioms", "axioms.quaternion-reeb", "def:3-structure",
        "xi_t = phi_b xi_c = -phi_c xi_b");
    AXIOMS_QUATERNION_ETA = ("axioms", "axioms.quaternion-eta", "def:3-structure",
        "eta^t = eta^b o phi_c = -eta^c o phi_b");
    AXIOMS_SPLITTING = ("axioms", "axioms.splitting", "def:contact-distribution",
        "TM = H + xi: projection onto H is idempotent, self-adjoint, killed by every eta^a");

    SASAKI_DEFECT = ("sasaki", "sasaki.defect", "def:sasakian",
        "(nabla_X phi_a) Y = g(X,Y) xi_a - eta^a(Y) X");
    SASAKI_NABLA_REEB = ("sasaki", "sasaki.nabla-reeb", "eq:sas-pro",
        "nabla_X xi_a = -phi_a X");
    SASAKI_CURVATURE_REEB = ("sasaki", "sasaki.curvature-reeb", "eq:sas-pro",
        "R(X,Y) xi_a = eta^a(Y) X - eta^a(X) Y and R(xi_a,X)Y = g(X,Y) xi_a - eta^a(Y) X");
    SASAKI_REEB_BRACKET = ("sasaki", "sasaki.reeb-bracket", "eq:bracket-xi",
        "[xi_a, xi_b] = 2 xi_c for even permutations");
    SASAKI_LEVI_CIVITA_REEB = ("sasaki", "sasaki.levi-civita-reeb", "thm:levi1",
        "nabla_{xi_1} xi_2 = xi_3 cyclically, nabla_{xi_a} xi_a = 0");

    CONNECTION_H_TENSOR = ("connection", "connection.h-tensor", "def:h-tensor",
        "h_ab = (1/2) L_{xi_a} phi_b matches the table h_12 = phi_3, h_31 = phi_2, h_23 = phi_1, h_aa = 0");
    CONNECTION_FORMS_AGREE = ("connection", "connection.forms-agree", "eq:new-conn",
        "defining and substituted forms of the H-connection agree");
    CONNECTION_METRICITY = ("connection", "connection.metricity", "thm:new-comp",
        "X g(Y,Z) = g(nablabar_X Y, Z) + g(Y, nablabar_X Z)");
    CONNECTION_REEB_PARALLEL = ("connection", "connection.reeb-parallel", "thm:new-comp",
        "nablabar_X xi_a = 0 for every X");
    CONNECTION_PRESERVES_H = ("connection", "connection.preserves-h", "thm:new-comp",
        "eta^a(nablabar_X Y) = 0 for H-fields Y");
    CONNECTION_BRACKET = ("connection", "connection.bracket", "eq:bracket3",
        "[X,Y] = nablabar_X Y - nablabar_Y X - 2 Omega^a(X,Y) xi_a");
    CONNECTION_PHI_PARALLEL = ("connection", "connection.phi-parallel", "thm:varphi",
        "(nablabar_X phi_a) Y = 0 for X, Y in H");
    CONNECTION_PHI_PARALLEL_LEVI_CIVITA = ("connection", "connection.phi-parallel-levi-civita", "thm:varphi",
        "control: Levi-Civita in place of nablabar leaves a defect of size |g(X,Y)|");

    TORSION_LEVI_CIVITA = ("torsion", "torsion.levi-civita", "def:levi-civita",
        "Levi-Civita connection is torsion free");
    TORSION_H_PAIR = ("torsion", "torsion.h-pair", "eq:torsion",
        "T(X,Y) = 2 Omega^a(X,Y) xi_a for X, Y in H");
    TORSION_H_REEB = ("torsion", "torsion.h-reeb", "eq:torsion",
        "T(X, xi_a) = 0 for X in H");
    TORSION_REEB_PAIR = ("torsion", "torsion.reeb-pair", "eq:torsion",
        "T(xi_a, xi_b) = -T(xi_b, xi_a) = -2 xi_c");

    CURVATURE_ORACLE = ("curvature", "curvature.oracle-gate", "eq:cur1",
        "Levi-Civita curvature equals s (g(Y,Z) X - g(X,Z) Y) on the round sphere");
    CURVATURE_REEB_LAST = ("curvature", "curvature.annihilation.reeb-last", "eq:curvature",
        "Rbar(X,Y) xi_a = 0 for all X, Y");
    CURVATURE_REEB_PAIR = ("curvature", "curvature.annihilation.reeb-pair", "eq:curvature1",
        "Rbar(xi_a, xi_b) X = 0 for X in H");
    CURVATURE_REEB_MIXED = ("curvature", "curvature.annihilation.reeb-mixed", "eq:curvature1",
        "Rbar(X, xi_a) Y = 0 for X, Y in H");
    CURVATURE_FIRST_PAIR = ("curvature", "curvature.symmetry.first-pair", "lemma:cur-pro",
        "Rbar(X,Y,Z,U) = -Rbar(Y,X,Z,U)");
    CURVATURE_LAST_PAIR = ("curvature", "curvature.symmetry.last-pair", "lemma:cur-pro",
        "Rbar(X,Y,Z,U) = -Rbar(X,Y,U,Z)");
    CURVATURE_BIANCHI = ("curvature", "curvature.symmetry.bianchi", "lemma:cur-pro",
        "Rbar(X,Y,U,Z) + Rbar(Y,Z,U,X) + Rbar(Z,X,U,Y) = 0");
    CURVATURE_PAIR_SWAP = ("curvature", "curvature.symmetry.pair-swap", "lemma:cur-pro",
        "Rbar(X,Y,Z,U) = Rbar(Z,U,X,Y)");
    CURVATURE_COR_XXX = ("curvature", "curvature.cor-x-phi1x-phi2x-phi3x", "cor:x-x1-x2-x3",
        "Rbar(X, phi_1 X, phi_2 X, phi_3 X) = R(X, phi_1 X, phi_2 X, phi_3 X)");

    RICCI_LEVI_CIVITA = ("ricci", "ricci.levi-civita", "lemma:ric",
        "S(X,Y) = (4n+2) g(X,Y)");
    RICCI_LEVI_CIVITA_REEB = ("ricci", "ricci.levi-civita-reeb", "eq:sas-pro",
        "S(X, xi_a) = (4n+2) eta^a(X)");
    RICCI_H_CONNECTION = ("ricci", "ricci.h-connection", "lemma:ric",
        "Sbar(X,Y) = (4n+5) g(X,Y) for X, Y in H");
    RICCI_H_CONNECTION_ALGEBRAIC = ("ricci", "ricci.h-connection-algebraic", "eq:cur1-2",
        "trace of Sbar computed with the algebraic curvature expansion");

    SECTIONAL_PLANE_INVARIANCE = ("sectional", "sectional.plane-invariance", "def:sectional",
        "K(Pi) does not depend on the spanning pair");
    SECTIONAL_HOLOMORPHIC_BAR = ("sectional", "sectional.holomorphic-bar", "def:holomorphic-sectional",
        "Hbar_a(X) = 4 on the round sphere");
    SECTIONAL_BIANCHI_SUM = ("sectional", "sectional.hbar-sum", "cor:bianchi",
        "Hbar_1(X) + Hbar_2(X) + Hbar_3(X) = 12");
    SECTIONAL_TANNO = ("sectional", "sectional.tanno-sum", "eq:tanno",
        "H_1(X) + H_2(X) + H_3(X) = 3");
    SECTIONAL_SEC_RELA = ("sectional", "sectional.sec-rela", "thm:sec-rela",
        "Hbar_a(X) - K(X, phi_a X) = 3 for unit X in H");
    SECTIONAL_CONS2 = ("sectional", "sectional.cons2", "cor:cons2",
        "Hbar_1, Hbar_2 constant implies Hbar_3 constant");
    SECTIONAL_CONVENTION_GLOBAL = ("sectional", "sectional.convention-global", "thm:sec-rela",
        "the selected sectional sign convention is the same at every sample and every a");

    THEOREM_SEC_H = ("theorem-sec", "theorem-sec.h-restricted", "thm:sec",
        "Kbar = K + 3 on phi_a-planes spanned by unit X in H");
    THEOREM_SEC_MIXED = ("theorem-sec", "theorem-sec.mixed-eta", "thm:sec",
        "polynomial relation in eta^b(X), eta^c(X) for X = cos t u + sin t xi_b");
    THEOREM_SEC_REEB = ("theorem-sec", "theorem-sec.reeb-direction", "thm:sec",
        "polynomial relation at X = xi_b exactly");

    CROSS_CHECK_H = ("cross-check", "cross-check.h-triples", "eq:cur1-2",
        "direct Rbar equals the algebraic expansion for X, Y, Z in H");
    CROSS_CHECK_REEB_LAST = ("cross-check", "cross-check.reeb-last-slot", "eq:cur1-2",
        "direct Rbar equals the algebraic expansion for X, Y in H and Z = xi_a");
    CROSS_CHECK_MIXED = ("cross-check", "cross-check.mixed", "eq:cur1-2",
        "direct Rbar equals the algebraic expansion for generic tangent X, Y, Z");
    CROSS_CHECK_REEB_LEADING = ("cross-check", "cross-check.reeb-leading-slots", "eq:cur1-2",
        "direct Rbar equals the algebraic expansion with xi_a in the X or Y slot");
}

pub fn lookup(id: &str) -> Option<&'static Identity> {
    ALL.iter().find(|i| i.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = ALL.iter().map(|i| i.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
    }

    #[test]
    fn ids_are_prefixed_by_suite() {
        for i in ALL {
            assert!(
                i.id.starts_with(i.suite),
                "{} not in suite {}",
                i.id,
                i.suite
            );
        }
    }
}
