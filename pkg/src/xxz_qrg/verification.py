"""Oracle-equivalence suites run by ``xxz-qrg verify``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Tolerances
from .ed import ed_ground, verify_block_ground_state
from .flow import CouplingState, flowed_delta, rg_step, rg_trajectory
from .hamiltonian import block_ground_energy, build_chain_hamiltonian, effective_two_block_hamiltonian
from .measures import (
    concurrence_closed_form,
    density_matrix,
    entropy_site2,
    partial_trace,
    von_neumann_entropy,
    wootters_concurrence,
)
from .qgroup import (
    build_qg_block_hamiltonian,
    qg_bond,
    qg_effective_two_block,
    qg_from_delta,
    qg_ground_energy,
    qg_ground_state,
    qg_rg_step,
)
from .scaling import MEASURES, derivative_chain, locate_minimum


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    max_error: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checks > 0 and self.failures == 0

    def record(self, error: float, tol: float, label: str = "") -> None:
        self.checks += 1
        self.max_error = max(self.max_error, float(error))
        if not error <= tol:
            self.failures += 1
            if len(self.notes) < 5:
                self.notes.append(f"{label}: error {error:.3e} > {tol:.1e}")


def suite_block_ed(tol: Tolerances) -> SuiteResult:
    res = SuiteResult("block_ed")
    for d in np.linspace(0.0, 5.0, 50):
        chk = verify_block_ground_state(float(d))
        res.record(chk.energy_error, tol.ed, f"energy delta={d:.3f}")
        res.record(abs(chk.deficit), tol.ed, f"deficit delta={d:.3f}")
        res.record(0.0 if chk.degeneracy == 2 else np.inf, tol.ed, f"degeneracy delta={d:.3f}")
    return res


def suite_qg_ed(tol: Tolerances) -> SuiteResult:
    res = SuiteResult("qg_ed")
    for d in np.linspace(1.0, 5.0, 21)[1:]:
        c = qg_from_delta(float(d))
        ed = ed_ground(build_qg_block_hamiltonian(c.J, c.q))
        res.record(abs(ed.energy - qg_ground_energy(c)), tol.ed, f"energy delta={d:.3f}")
    for d in np.linspace(0.0, 1.0, 11):
        c = qg_from_delta(float(d))
        h = build_qg_block_hamiltonian(c.J, c.q)
        e0 = qg_ground_energy(c)
        for partner in (False, True):
            psi = qg_ground_state(c, partner).amplitudes
            res.record(float(np.max(np.abs(h @ psi - e0 * psi))), tol.ed, f"residual delta={d:.3f}")
    return res


def suite_closed_forms(tol: Tolerances) -> SuiteResult:
    res = SuiteResult("closed_forms")
    for d in np.linspace(0.0, 5.0, 200):
        rho = density_matrix(float(d))
        c = wootters_concurrence(partial_trace(rho, [1, 3]))
        res.record(abs(c - concurrence_closed_form(float(d))), tol.closed_form, f"concurrence delta={d:.3f}")
        e = von_neumann_entropy(partial_trace(rho, [2]))
        res.record(abs(e - entropy_site2(float(d))), tol.closed_form, f"entropy delta={d:.3f}")
    return res


def _composed(measure: str):
    if measure == "entropy":
        return lambda d, n: entropy_site2(flowed_delta(d, n))
    return lambda d, n: concurrence_closed_form(flowed_delta(d, n))


def chain_rule_errors(max_n: int = 6, lo: float = 0.5, hi: float = 1.8, points: int = 261,
                      h: float = 1e-7, exclusion: float = 1e-3):
    """Yield (measure, n, delta, relative error) of the chain rule against central differences.

    Points within ``exclusion`` of a derivative minimum, or whose stencil trips the
    Ising guard (where the composed measure is only piecewise defined), are skipped.
    """
    for measure in MEASURES:
        f = _composed(measure)
        for n in range(max_n + 1):
            try:
                dm = locate_minimum(n, measure)[0]
            except ValueError:
                dm = None
            for d in np.linspace(lo, hi, points):
                d = float(d)
                if dm is not None and abs(d - dm) < exclusion:
                    continue
                if rg_trajectory(CouplingState(1.0, d + h), n).halted == "ising":
                    continue
                exact = derivative_chain(d, n, measure)
                fd = (f(d + h, n) - f(d - h, n)) / (2 * h)
                yield measure, n, d, abs(exact - fd) / abs(exact)


def suite_chain_rule(tol: Tolerances) -> SuiteResult:
    res = SuiteResult("chain_rule")
    for measure, n, d, err in chain_rule_errors(h=tol.fd_step):
        res.record(err, tol.chain_rule, f"{measure} n={n} delta={d:.4f}")
    return res


def effective_hamiltonian_error(delta: float, J: float = 1.0) -> float:
    c = CouplingState(J, delta)
    ref = 2 * block_ground_energy(c) * np.eye(4) + build_chain_hamiltonian(2, rg_step(c), "open")
    return float(np.max(np.abs(effective_two_block_hamiltonian(c) - ref)))


def qg_effective_hamiltonian_error(delta: float, J: float = 1.0) -> float:
    """Distance of the projected two-block QG Hamiltonian from ``const + J'/4 h(q)``."""
    c = qg_from_delta(delta, J)
    diff = qg_effective_two_block(c) - 0.25 * qg_rg_step(c).J * qg_bond(1, 2, 2, c.q)
    return float(np.max(np.abs(diff - diff[0, 0] * np.eye(4))))


def suite_effective_hamiltonian(tol: Tolerances) -> SuiteResult:
    res = SuiteResult("effective_hamiltonian")
    for d in np.linspace(0.0, 3.0, 20):
        res.record(effective_hamiltonian_error(float(d)), tol.effective_hamiltonian, f"delta={d:.3f}")
    for d in np.linspace(0.0, 3.0, 13):
        res.record(qg_effective_hamiltonian_error(float(d)), tol.effective_hamiltonian, f"qg delta={d:.3f}")
    return res


SUITES = (
    suite_block_ed,
    suite_qg_ed,
    suite_closed_forms,
    suite_chain_rule,
    suite_effective_hamiltonian,
)


def run_all(tol: Tolerances | None = None) -> list[SuiteResult]:
    tol = tol or Tolerances()
    return [suite(tol) for suite in SUITES]
