"""End-to-end construction of a faithful representation with a certified
degree bound, plus independent checkers for representations and embedding
certificates.

The checkers recompute everything they assert (brackets, radicals, ranks)
from structure constants and exact linear algebra; they never trust state
produced by the constructors.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .embed import EmbeddingCertificate, embed_splittable
from .exact_linalg import ExactMatrix, Vec, kernel_basis, rank
from .lie_core import (
    LieLattice,
    adjoint_rep,
    is_nilpotent,
    is_nilpotent_submodule,
    is_semisimple,
    nilradical,
    require_valid,
    solvable_radical,
    validate,
)
from .nilrep import birkhoff_bounds, burde_bound, nilpotent_faithful_rep
from .rep import LinearRep, direct_sum_rep, restrict_rep
from .zassenhaus import splittable_rep

log = logging.getLogger(__name__)


class VerificationFailure(RuntimeError):
    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


def degree_bound(r: int) -> Fraction:
    """Certified rational upper bound r + B(r) for the representation degree."""
    return r + burde_bound(r)


@dataclass(frozen=True)
class VerificationReport:
    degree: int
    bound: Fraction
    homomorphism_ok: bool
    homomorphism_violations: tuple[tuple[int, int], ...]
    integral_ok: bool
    faithful_ok: bool
    kernel_witness: tuple[Vec, ...]
    nilrep_ok: bool
    nilrep_violations: tuple[int, ...]
    degree_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.homomorphism_ok
            and self.integral_ok
            and self.faithful_ok
            and self.nilrep_ok
            and self.degree_ok
        )

    def checks(self) -> dict[str, bool]:
        return {
            "homomorphism": self.homomorphism_ok,
            "integrality": self.integral_ok,
            "faithfulness": self.faithful_ok,
            "nil_representation": self.nilrep_ok,
            "degree_bound": self.degree_ok,
        }


def verify_representation(L: LieLattice, rep: LinearRep) -> VerificationReport:
    """Independent checks: homomorphism on all basis pairs, integrality over
    Z, faithfulness via the rank of the stacked matrices, nilpotency of the
    images of the nilpotent radical, and the degree bound."""
    if len(rep.matrices) != L.rank:
        raise ValueError("representation size does not match the lattice rank")
    n = rep.degree
    bound_to_L = LinearRep(lattice=L, matrices=rep.matrices, provenance=rep.provenance)
    violations = tuple(bound_to_L.homomorphism_violations())
    integral_ok = rep.is_integral if L.domain == "Z" else True

    witness: tuple[Vec, ...] = ()
    if L.rank == 0:
        faithful_ok = True
    else:
        stacked = ExactMatrix.from_rows(
            [tuple(x for row in M.entries for x in row) for M in rep.matrices],
            cols=max(n * n, 1),
        )
        faithful_ok = rank(stacked) == L.rank
        if not faithful_ok:
            witness = tuple(kernel_basis(stacked, "Q").basis.entries)

    rn = nilradical(L)
    nil_violations = []
    for idx, row in enumerate(rn.module.basis.entries):
        M = rep.matrix_of(row)
        if not M.power(max(n, 1)).is_zero():
            nil_violations.append(idx)
    nilrep_ok = not nil_violations

    bound = degree_bound(L.rank) if L.rank >= 1 else Fraction(0)
    degree_ok = Fraction(n) <= bound if L.rank >= 1 else n == 0

    return VerificationReport(
        degree=n,
        bound=bound,
        homomorphism_ok=not violations,
        homomorphism_violations=violations,
        integral_ok=integral_ok,
        faithful_ok=faithful_ok,
        kernel_witness=witness,
        nilrep_ok=nilrep_ok,
        nilrep_violations=tuple(nil_violations),
        degree_ok=degree_ok,
    )


@dataclass(frozen=True)
class CertificateReport:
    original_valid: bool
    extension_valid: bool
    extension_integral: bool
    injection_injective: bool
    injection_homomorphism: bool
    nbar_is_ideal: bool
    nbar_is_nilpotent: bool
    nbar_is_nilradical: bool
    rn_image_contained: bool
    rank_matches: bool

    @property
    def ok(self) -> bool:
        return all(
            getattr(self, f)
            for f in (
                "original_valid",
                "extension_valid",
                "extension_integral",
                "injection_injective",
                "injection_homomorphism",
                "nbar_is_ideal",
                "nbar_is_nilpotent",
                "nbar_is_nilradical",
                "rn_image_contained",
                "rank_matches",
            )
        )

    def checks(self) -> dict[str, bool]:
        return {
            "original_valid": self.original_valid,
            "extension_valid": self.extension_valid,
            "extension_integral": self.extension_integral,
            "injection_injective": self.injection_injective,
            "injection_homomorphism": self.injection_homomorphism,
            "nbar_is_ideal": self.nbar_is_ideal,
            "nbar_is_nilpotent": self.nbar_is_nilpotent,
            "nbar_is_nilradical": self.nbar_is_nilradical,
            "rn_image_contained": self.rn_image_contained,
            "rank_matches": self.rank_matches,
        }


def verify_certificate(cert: EmbeddingCertificate) -> CertificateReport:
    """Re-verify an embedding certificate from scratch."""
    L, ext = cert.original, cert.extension
    original_valid = validate(L).ok
    extension_valid = validate(ext).ok
    extension_integral = ext.domain == "Z" and cert.injection.is_integral

    inj = cert.injection
    injective = rank(inj) == L.rank
    hom = True
    for i in range(L.rank):
        for j in range(i + 1, L.rank):
            image_of_bracket = _push(L.bracket(L.basis_vector(i), L.basis_vector(j)), inj)
            bracket_of_images = ext.bracket(inj.entries[i], inj.entries[j])
            if image_of_bracket != bracket_of_images:
                hom = False

    nbar = cert.nilpotent_part
    nbar_ideal = nbar.is_ideal
    nbar_nilp = is_nilpotent_submodule(ext, nbar.module)
    nbar_is_nilradical = nilradical(ext).module == nbar.module

    rn_image = all(
        nbar.module.contains(_push(row, inj))
        for row in nilradical(L).module.basis.entries
    )
    rank_matches = nbar.rank == solvable_radical(L).rank

    return CertificateReport(
        original_valid=original_valid,
        extension_valid=extension_valid,
        extension_integral=extension_integral,
        injection_injective=injective,
        injection_homomorphism=hom,
        nbar_is_ideal=nbar_ideal,
        nbar_is_nilpotent=nbar_nilp,
        nbar_is_nilradical=nbar_is_nilradical,
        rn_image_contained=rn_image,
        rank_matches=rank_matches,
    )


def _push(v: Vec, matrix: ExactMatrix) -> Vec:
    out = [Fraction(0)] * matrix.cols
    for coeff, row in zip(v, matrix.entries, strict=True):
        if coeff:
            for k, x in enumerate(row):
                out[k] += coeff * x
    return tuple(out)


@dataclass(frozen=True)
class AdoReport:
    path: str  # nilpotent-shortcut | semisimple-shortcut | theorem
    degree: int
    bound: Fraction
    phi_degree: int | None
    rs_rank: int
    verification: VerificationReport
    certificate_report: CertificateReport | None
    comparison_bounds: dict[str, Fraction] | None

    @property
    def ok(self) -> bool:
        cert_ok = self.certificate_report.ok if self.certificate_report else True
        return self.verification.ok and cert_ok


def ado_representation(
    L: LieLattice,
    strict: bool = False,
    max_scalar_search: int = 64,
) -> tuple[LinearRep, AdoReport, EmbeddingCertificate | None]:
    """Faithful representation of degree at most rank + B(rank).

    Without `strict`, nilpotent lattices get the truncated regular
    representation alone and semisimple ones the adjoint alone; the strict
    path always runs the embedding construction and the direct sum with the
    adjoint.
    """
    require_valid(L)
    r = L.rank
    if r == 0:
        raise ValueError("rank-zero lattice has nothing to represent")
    rs_rank = solvable_radical(L).rank
    cert: EmbeddingCertificate | None = None
    cert_report: CertificateReport | None = None
    comparison = None

    if not strict and is_nilpotent(L):
        path = "nilpotent-shortcut"
        rep = nilpotent_faithful_rep(L)
        phi_degree = rep.degree
        from .lie_core import nilpotency_class

        comparison = birkhoff_bounds(r, nilpotency_class(L))
    elif not strict and is_semisimple(L.to_field()):
        path = "semisimple-shortcut"
        rep = adjoint_rep(L)
        phi_degree = None
    else:
        path = "theorem"
        cert = embed_splittable(L, max_scalar_search)
        cert_report = verify_certificate(cert)
        if not cert_report.ok:
            raise VerificationFailure("embedding certificate failed verification", cert_report)
        N, S, action = cert.split()
        phi = splittable_rep(N, S, action)
        if phi.lattice != cert.extension:
            raise VerificationFailure("splittable lattice mismatch", cert_report)
        phi_on_L = restrict_rep(phi, cert.injection, L)
        rep = direct_sum_rep(phi_on_L, adjoint_rep(L))
        phi_degree = phi.degree

    report = verify_representation(L, rep)
    ado_report = AdoReport(
        path=path,
        degree=report.degree,
        bound=report.bound,
        phi_degree=phi_degree,
        rs_rank=rs_rank,
        verification=report,
        certificate_report=cert_report,
        comparison_bounds=comparison,
    )
    if not report.ok:
        raise VerificationFailure(
            f"representation failed verification: {report.checks()}", ado_report
        )
    log.info("ado path=%s degree=%d bound=%s", path, report.degree, report.bound)
    return rep, ado_report, cert
