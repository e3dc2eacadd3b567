class CliMessages:
    """All CLI messages and text templates"""

    # Program description and help
    DESCRIPTION = """🌵 Canonical bases of holomorphic differentials of split cyclotomic function fields.

Every command takes the constant field order --q and a split modulus --modulus,
given either factored ("0^2,1^1") or as a polynomial in T ("T^3+2*T^2")."""

    EPILOG = """Commands:
  genus       - Genus via Riemann-Hurwitz
  basis       - Canonical basis anchored at one ramified prime
  generators  - Generator set of the differentials
  rep         - Matrices of the Galois action on the basis
  gaps        - Order and gap sequences at a ramified prime
  count       - Basis size from generating functions only
  verify      - Run the oracle suites on every small modulus"""

    HELP_Q = "order of the constant field (a prime power)"
    HELP_MODULUS = ("split modulus, factored 'root^mult,...' or a polynomial in T; "
                    "the last '^' of a factor is its multiplicity, so write powers of g as '(g^2)^1'")
    HELP_AT = "0-based index of the anchor prime (roots in ascending order)"
    HELP_FORMAT = "output format (defaults depend on the command)"
    HELP_UNIT = "unit of F_q[T]/(M), e.g. '2' or '1+T'; all units when omitted"
    HELP_MAX_DEG = "largest modulus degree checked by verify"
    HELP_MAX_GENUS = "largest genus to enumerate (overrides CFD_MAX_GENUS)"
    HELP_MAX_UNITS = "largest unit group to enumerate (overrides CFD_MAX_UNITS)"

    # Text renderings
    BASIS_HEADER = "Basis of {modulus} over GF({q}) anchored at prime {anchor}: {count} element(s)"
    BASIS_LINE = "{tuple}  val_finite={val_finite}  inf_bound={inf_bound}"
    GENERATORS_HEADER = "Generators of {modulus} over GF({q}): {count} element(s)"
    REP_HEADER = "rho({unit}) on the basis anchored at prime {anchor}:"
    GAPS_TEXT = """Modulus {modulus}, anchor prime {anchor}, genus {genus}
Orders: {orders}
Gaps:   {gaps}
Convention: {convention}"""
    GAPS_CAVEAT = "⚠️ r > 1: valuations at the anchor prime, not claimed to be an order sequence"
    VERIFY_SUMMARY = "{icon} GF({q}), deg <= {max_deg}: {passed} passed, {failed} failed, {skipped} skipped"
    VERIFY_FAILURE = "❌ {suite} on {modulus}: {detail}"

    # Errors
    ERROR_MESSAGE = "❌ {kind}: {message}"
    UNSUPPORTED_FORMAT = "format '{fmt}' is not available for the {command} command"
    Q_TOO_LARGE = "q = {q} exceeds the limit of {limit} (CFD_MAX_Q)"
    MISSING_MODULUS = "the {command} command needs --modulus"
    BAD_ENVIRONMENT = "malformed environment: {errors}"
