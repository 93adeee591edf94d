"""Property suite run by ``bandperm verify``.

Each property is checked on the input permutation (if any) and on seeded
random instances. The report contains no timestamps, so one seed always
produces the same report.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

from .config import ConfigService
from .documents import permutation_to_document
from .errors import BandpermError, BoundViolation
from .factorize import factor_bc, factor_full, factor_layers, reconstruct_bc, reconstruct_full, reconstruct_layers
from .generators import (
    random_invertible_rational,
    random_like,
    random_lower_triangular,
    random_permutation,
    random_rational,
    random_structured_rational,
)
from .index import center, find_split, plus_index, plus_index_sweep, rewire_split, split_at, window_R
from .oracle import (
    RationalMatrix,
    asplund_check,
    finite_index,
    minus_truncation_index,
    section_counts,
    truncation_counts,
    truncation_index,
)
from .permutations import BandedPermutation, as_eventual_shift, compose, equals


logger = logging.getLogger(__name__)

ASPLUND_P = (0, 1, 2)
ASPLUND_K = (1, 2, 3)
MAX_MATRIX = 8


@dataclass
class VerifyConfig:
    trials: int
    seed: int
    sweep_radius: int
    max_bandwidth: int
    max_window: int
    max_period: int

    @classmethod
    def from_service(cls, service: ConfigService, **overrides: Optional[int]) -> "VerifyConfig":
        values = {
            "trials": service.get_int("verify_trials"),
            "seed": service.get_int("verify_seed"),
            "sweep_radius": service.get_int("sweep_radius"),
            "max_bandwidth": service.get_int("max_bandwidth"),
            "max_window": service.get_int("max_window"),
            "max_period": service.get_int("max_period"),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    first_failure: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, message: Optional[str], instance: Optional[Dict[str, Any]] = None) -> None:
        self.checked += 1
        if message is None:
            return
        self.failures += 1
        if self.first_failure is None:
            self.first_failure = {"message": message, "instance": instance}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "property": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "first_failure": self.first_failure,
        }


Check = Callable[["VerifyRunner", BandedPermutation], Optional[str]]


class VerifyRunner:
    def __init__(self, config: Optional[VerifyConfig] = None, service: Optional[ConfigService] = None):
        if config is None:
            config = VerifyConfig.from_service(service or ConfigService())
        self.config = config
        self.rng = random.Random(config.seed)
        self.results: Dict[str, PropertyResult] = {}

    # Permutation properties ---------------------------------------------
    def _sweep(self) -> range:
        return range(-self.config.sweep_radius, self.config.sweep_radius + 1)

    def check_jstar_independence(self, P: BandedPermutation) -> Optional[str]:
        values = set(plus_index_sweep(P, self._sweep()).values())
        if len(values) > 1:
            return f"plus-index depends on j*: {sorted(values)}"
        return None

    def check_oracle_agreement(self, P: BandedPermutation) -> Optional[str]:
        kappa = plus_index(P)
        for k in self._sweep():
            counted = truncation_index(P, k)
            if counted != kappa:
                return f"window gives {kappa}, truncation at k={k} gives {counted}"
        return None

    def check_minus_side(self, P: BandedPermutation) -> Optional[str]:
        kappa = plus_index(P)
        inv = P.inverse()
        for k in self._sweep():
            if truncation_index(inv, k) != -kappa:
                return f"transpose does not negate the truncation index at k={k}"
            if truncation_index(P, k + 1) + minus_truncation_index(P, k) != 0:
                return f"plus and minus truncations at {k} do not cancel"
        return None

    def check_section_counts(self, P: BandedPermutation) -> Optional[str]:
        w = P.bandwidth()
        span = P.non_trivial_range()
        k = self.rng.randint(span.start - w, max(span.start - w, span.stop))
        stop = k + 2 * w + 1
        section = section_counts(P, k, stop)
        counted = truncation_counts(P, k)
        if (section.alpha, section.beta) != (counted.alpha, counted.beta):
            return (
                f"section [{k}, {stop}) gives alpha={section.alpha} beta={section.beta}, "
                f"counting gives alpha={counted.alpha} beta={counted.beta}"
            )
        return None

    def check_additivity(self, P: BandedPermutation) -> Optional[str]:
        Q = random_like(self.rng, P, self.config.max_bandwidth)
        left, right = plus_index(P), plus_index(Q)
        product = plus_index(compose(P, Q))
        if product != left + right:
            return f"plus-index of product {product} != {left} + {right} (Q={permutation_to_document(Q)})"
        return None

    def check_centering(self, P: BandedPermutation) -> Optional[str]:
        kappa = plus_index(center(P).centered)
        return None if kappa == 0 else f"centered permutation has plus-index {kappa}"

    def check_split_consistency(self, P: BandedPermutation) -> Optional[str]:
        split = find_split(P)
        if split is None:
            return None
        kappa = plus_index(P)
        if split.jstar - split.istar != kappa:
            return f"split (i*={split.istar}, j*={split.jstar}) disagrees with plus-index {kappa}"
        return None

    def check_rewire_invariance(self, P: BandedPermutation) -> Optional[str]:
        base = as_eventual_shift(P)
        if base is None:
            return None
        kappa = plus_index(P)
        span = base.non_trivial_range()
        jstar = self.rng.randint(span.start - 2, span.stop + 2)
        window = window_R(base, jstar)
        rewired = rewire_split(base, jstar)
        if plus_index(rewired) != kappa:
            return f"rewiring at j*={jstar} changed the plus-index to {plus_index(rewired)}"
        if window.w and split_at(rewired, jstar + window.w - window.n) is None:
            return f"rewired permutation does not split at i*={jstar + window.w - window.n}"
        return None

    def check_bc_round_trip(self, P: BandedPermutation) -> Optional[str]:
        P_c = center(P).centered
        f = factor_bc(P_c)
        if any(len(block) != 2 * f.w for block in (*f.b_blocks.values(), *f.c_blocks.values())):
            return "a block has size other than 2w"
        if not equals(reconstruct_bc(f), P_c):
            return "B·C does not reproduce the centered permutation"
        return None

    def check_layers_round_trip(self, P: BandedPermutation) -> Optional[str]:
        P_c = center(P).centered
        try:
            f = factor_layers(P_c)
        except BoundViolation as exc:
            return str(exc)
        if not equals(reconstruct_layers(f), P_c):
            return "product of layers does not reproduce the centered permutation"
        return None

    def check_full_pipeline(self, P: BandedPermutation) -> Optional[str]:
        try:
            f = factor_full(P)
        except BoundViolation as exc:
            return str(exc)
        if not equals(reconstruct_full(f), P):
            return "S^(-kappa) F_1 ... F_N does not reproduce the input"
        return None

    PERMUTATION_CHECKS: Dict[str, Check] = {
        "jstar-independence": check_jstar_independence,
        "oracle-agreement": check_oracle_agreement,
        "minus-side": check_minus_side,
        "section-counts": check_section_counts,
        "additivity": check_additivity,
        "centering": check_centering,
        "split-consistency": check_split_consistency,
        "rewire-invariance": check_rewire_invariance,
        "bc-round-trip": check_bc_round_trip,
        "layers-round-trip": check_layers_round_trip,
        "full-pipeline": check_full_pipeline,
    }

    # Random-only properties ---------------------------------------------
    def check_lower_triangular(self) -> Optional[str]:
        L = random_lower_triangular(self.rng, self.config.max_window, self.config.max_bandwidth)
        kappa = plus_index(L)
        if kappa > 0:
            return f"lower-triangular {permutation_to_document(L)} has plus-index {kappa}"
        return None

    def check_asplund(self) -> Optional[str]:
        n = self.rng.randint(1, MAX_MATRIX)
        if self.rng.random() < 0.5:
            M = random_invertible_rational(self.rng, n)
        else:
            M = random_structured_rational(self.rng, n, self.rng.choice(ASPLUND_P), self.rng.choice(ASPLUND_K))
        for p in ASPLUND_P:
            for k in ASPLUND_K:
                cond_i, cond_ii = asplund_check(M, p, k)
                if cond_i != cond_ii:
                    return f"n={n} p={p} k={k}: conditions disagree ({cond_i}, {cond_ii})"
        return None

    def check_finite_index(self) -> Optional[str]:
        n = self.rng.randint(0, MAX_MATRIX)
        M = RationalMatrix.from_rows([[random_rational(self.rng) for _ in range(n)] for _ in range(n)])
        index = finite_index(M)
        return None if index == 0 else f"{n}x{n} matrix reported index {index}"

    MATRIX_CHECKS: Dict[str, Callable[["VerifyRunner"], Optional[str]]] = {
        "lower-triangular": check_lower_triangular,
        "asplund": check_asplund,
        "finite-index": check_finite_index,
    }

    # Driver -------------------------------------------------------------
    def _result(self, name: str) -> PropertyResult:
        if name not in self.results:
            self.results[name] = PropertyResult(name)
        return self.results[name]

    def _check_permutation(self, P: BandedPermutation) -> None:
        instance = permutation_to_document(P)
        for name, check in self.PERMUTATION_CHECKS.items():
            try:
                message = check(self, P)
            except BandpermError as exc:
                message = f"{type(exc).__name__}: {exc}"
            self._result(name).record(message, instance)

    def _check_matrices(self) -> None:
        for name, check in self.MATRIX_CHECKS.items():
            try:
                message = check(self)
            except BandpermError as exc:
                message = f"{type(exc).__name__}: {exc}"
            self._result(name).record(message)

    def run(self, P: Optional[BandedPermutation] = None, name: Optional[str] = None) -> Dict[str, Any]:
        self.rng = random.Random(self.config.seed)
        self.results = {}
        for prop in (*self.PERMUTATION_CHECKS, *self.MATRIX_CHECKS):
            self._result(prop)

        if P is not None:
            self._check_permutation(P)
        for trial in range(self.config.trials):
            instance = random_permutation(
                self.rng, self.config.max_window, self.config.max_period, self.config.max_bandwidth
            )
            logger.debug("trial %d: %s", trial, permutation_to_document(instance))
            self._check_permutation(instance)
            self._check_matrices()

        results = [result.to_dict() for result in self.results.values()]
        for result in self.results.values():
            logger.debug("%s: %d checked, %d failed", result.name, result.checked, result.failures)
        return {
            "seed": self.config.seed,
            "trials": self.config.trials,
            "input": name,
            "results": results,
            "passed": all(result.passed for result in self.results.values()),
        }


def run_verify(
    P: Optional[BandedPermutation] = None,
    name: Optional[str] = None,
    config: Optional[VerifyConfig] = None,
) -> Dict[str, Any]:
    runner = VerifyRunner(config=config)
    return runner.run(P, name)


__all__ = ["PropertyResult", "VerifyConfig", "VerifyRunner", "run_verify"]
