from belyi.catalog import CatalogEntry, build_isogeny
from belyi.expressions import parse_scalar
from belyi.isogeny import IsogenyMap, two_descent_target, verify_isogeny_full, verify_isogeny_xonly
from belyi.log_utils import Color
from belyi.polyalg import Polynomial
from belyi.reports import VerificationReport
from belyi.verifiers.base import Verifier, check_j


class IsogenyVerifier(Verifier):
    """
    Isogenies given with their y-component, or by x alone (the y-component is then recovered up to a constant),
    and the 2-descent pattern u = x^2 for given a, b
    """

    name = "Isogeny Verifier"
    color = Color.YELLOW
    kind = "isogeny"

    def verify(self, entry: CatalogEntry, report: VerificationReport) -> None:
        if "two_descent" in entry.payload:
            self._two_descent(entry, report)
            return None
        iso = build_isogeny(entry)
        full = iso if iso.R is not None else self._xonly(entry, iso, report)
        if full is not None:
            report.extend(verify_isogeny_full(full, entry.name))
        check_j(report, entry, iso.source, "j_source")
        check_j(report, entry, iso.target, "j_target")
        return None

    def _xonly(self, entry: CatalogEntry, iso: IsogenyMap, report: VerificationReport):
        result = verify_isogeny_xonly(iso.source.f, iso.target.f, iso.u, iso.source.n)
        report.add("x-only identity", result.flag, "g(u)/f is a constant times an n-th power")
        if not result.flag:
            return None
        report.details["c"] = str(result.constant)
        if "c" in entry.expected:
            expected = parse_scalar(entry.expected["c"], entry.number_field())
            report.add("constant", result.constant == expected, f"computed {result.constant}, expected {expected}")
        if result.nth_power is None:
            report.skip("rational y-component", f"c = {result.constant} is irrational")
            return None
        if "nth_power" in entry.expected:
            report.add(
                "rational y-component",
                result.nth_power == bool(entry.expected["nth_power"]),
                f"c {'is' if result.nth_power else 'is not'} an {iso.source.n}-th power in Q",
            )
        if not result.nth_power:
            self.log(f"{entry.name} needs a field extension for its y-component")
            return None
        return IsogenyMap(iso.source, iso.target, iso.u, result.R, iso.degree)

    def _two_descent(self, entry: CatalogEntry, report: VerificationReport) -> None:
        field = entry.number_field()
        for pair in entry.payload["two_descent"]:
            a, b = (parse_scalar(v, field) for v in pair)
            iso, cubic = two_descent_target(a, b)
            label = f"a={a}, b={b}"
            report.extend(verify_isogeny_full(iso, entry.name), prefix=f"{label}: ")
            X = Polynomial.x(field)
            expected = X * (X * X - X.scale(a * 2) + (a * a - b * 4))
            report.add(f"{label}: weierstrass model", cubic == expected, f"{cubic}")
