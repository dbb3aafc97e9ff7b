"""Named reference structures shared by the tests, the verify suites and data/."""
from .frames import InformationFrame
from .order import FinitePoset
from .rough import CFSpace


def f_unit() -> InformationFrame:
    """One token t with Con_t = {∅, {t}} and ∅ ⊢_t t, {t} ⊢_t t."""
    return InformationFrame.from_sets(
        ["t"],
        {"t": [[], ["t"]]},
        {"t": [([], "t"), (["t"], "t")]},
        truth="t",
    )


def p_chain2() -> FinitePoset:
    return FinitePoset.chain(2)


def p_diamond() -> FinitePoset:
    return FinitePoset.diamond()


def u_unit() -> CFSpace:
    """U = {u}, Θ = {(u,u)}, 𝔉 = {{u}}: topological, with (M)."""
    return CFSpace.from_sets(["u"], [("u", "u")], [["u"]])


def u_empty_f() -> CFSpace:
    """U = {u}, Θ = ∅, 𝔉 = {∅}: (M) holds through the empty member."""
    return CFSpace.from_sets(["u"], [], [[]])


def u_nonalg() -> CFSpace:
    """A valid, non-topological space: C of it is strong but not algebraic."""
    return CFSpace.from_sets(["u", "v"], [("u", "v"), ("v", "v")], [[], ["u"], ["v"]])


FIXTURES = {
    'F_unit': f_unit,
    'P_chain2': p_chain2,
    'P_diamond': p_diamond,
    'U_unit': u_unit,
    'U_emptyF': u_empty_f,
    'U_nonalg': u_nonalg,
}


__all__ = ["f_unit", "p_chain2", "p_diamond", "u_unit", "u_empty_f", "u_nonalg", "FIXTURES"]
