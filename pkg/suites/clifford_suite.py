import numpy as np

from algebra.gamma_algebra import LEVI_CIVITA, build_gamma_set, check_clifford, standard_spin_generators
from algebra.matrix_core import commutator, hermiticity_residual, identity, norm
from algebra.momentum_ops import AXES, hamiltonian
from reporting.models import ReportBuilder
from suites.custom_suite_base import SuiteBase, Suites

DESCRIPTION = "Clifford relations, gamma4, alpha matrices, spin generators and H(p)^2 = |p|^2."


class CliffordSuite(SuiteBase):
    suite = Suites.CLIFFORD
    DESCRIPTION = DESCRIPTION

    def build(self, builder: ReportBuilder) -> None:
        tol = self.config.tol_exact
        g = build_gamma_set()
        builder.extend(check_clifford(g, tol))

        spin = standard_spin_generators()
        for (a, b, c), _ in LEVI_CIVITA.items():
            builder.add(
                f"spin.commutator[{a}{b},{b}{c}]",
                norm(commutator(spin.s_ab(a, b), spin.s_ab(b, c)) - 1j * spin.s_ab(c, a)),
                tol,
                anchor="Eq. (5)",
            )
        for a in AXES:
            builder.add(f"spin.hermitian.S4{a}", hermiticity_residual(spin.s_4a(a)), tol)
            builder.add(f"spin.sigma_square[{a}]", norm(spin.sigma[a - 1] @ spin.sigma[a - 1] - identity(4)), tol)
            builder.add(f"spin.S4{a}.commutes_gamma0", norm(commutator(spin.s_4a(a), g.gamma0)), tol)
        for a, b in ((1, 2), (2, 3), (3, 1)):
            builder.add(f"spin.S{a}{b}.commutes_gamma0", norm(commutator(spin.s_ab(a, b), g.gamma0)), tol)

        square, gamma4 = [], []
        for p in self.momenta():
            e_sq = float(p @ p)
            h = hamiltonian(p)
            square.append(norm(h @ h - e_sq * identity(4)) / e_sq)
            gamma4.append(norm(commutator(g.gamma4, h)) / np.sqrt(e_sq))
        builder.add_max("hamiltonian.square", square, tol, anchor="Eq. (1)")
        builder.add_max("hamiltonian.commutes_gamma4", gamma4, tol, anchor="Eq. (2)")

        # Negative controls: a swapped gamma and a rescaled set must both break the algebra.
        swapped = check_clifford(type(g).from_gammas(g.gammas[0], g.gammas[2], g.gammas[2], g.gammas[3]), tol)
        builder.add(
            "negative.swapped_gamma",
            swapped.check("anticommutator[1,2]").residual,
            tol,
            expect_pass=False,
            note="gamma1 replaced by gamma2",
        )
        scaled = check_clifford(g.scaled(2.0), tol)
        builder.add(
            "negative.scaled_set",
            scaled.check("anticommutator[0,0]").residual,
            tol,
            expect_pass=False,
            note="all gammas doubled",
        )
        builder.note(
            "alpha_a is read as gamma0 gamma_a; the printed gamma_a gamma_a is a scalar and is treated as a misprint."
        )
