"""Core constants for the QES engine."""

# Variable universe, in monomial order (x is the most significant)
VARIABLES = ("x", "y", "u", "v", "tau", "mu", "nu", "lam")
CHART_XY_VARS = ("x", "y")
CHART_UV_VARS = ("u", "v")
PARAMETER_VARS = ("tau", "mu", "nu", "lam")

# Scaling weights under y_i -> t*y_i
VARIABLE_WEIGHTS = {
    "x": 2,
    "y": 3,
    "u": 2,
    "v": 6,
    "tau": -2,
    "mu": -4,
    "nu": 0,
    "lam": 0,
}

# Bits per exponent in a packed monomial key
EXPONENT_BITS = 10
MAX_EXPONENT = (1 << EXPONENT_BITS) - 1

# Denominator bases a rational coefficient may carry
DECLARED_BASES = ("D_xy", "D_uv", "v", "y")

# Output format
SCHEMA_VERSION = "1.0"

# Symbolic identity suite
IDENTITY_IDS = [
    "gauge_A2",
    "h_uv_restriction",
    "h_sl3_form",
    "z2_symmetry",
    "sqrtD_general",
    "sqrtD_rational",
    "sqrtD_trig",
    "selfsimilarity",
    "k_parity",
    "k_commutes",
    "k_sl3_form",
    "ksq_uv_commutes",
    "g2_gauge",
    "g2_add_form",
    "sextic_n2",
]

# Identities reported as PassWithDiscrepancies that still count as a clean run
DISCREPANCY_WHITELIST = {
    "gauge_A2",
    "sqrtD_general",
    "sqrtD_trig",
    "selfsimilarity",
    "k_parity",
    "k_sl3_form",
    "g2_add_form",
    "g2_gauge",
    "sextic_n2",
}

# Numeric cross-checks
CHECK_IDS = [
    "wp_ode",
    "wp_duplication",
    "sigma_quasi_periodicity",
    "jacobian_1d",
    "map_parity",
    "rational_limit",
    "potential_match",
    "jacobian_DW",
    "sigma_factorization",
    "trig_degeneration_I",
    "trig_degeneration_II",
    "discriminant_trig",
    "eigenfunction_residual",
    "matushko_n2",
]

CHECK_TOLERANCES = {
    "wp_ode": 1e-10,
    "wp_duplication": 1e-9,
    "sigma_quasi_periodicity": 1e-8,
    "jacobian_1d": 1e-8,
    "map_parity": 1e-10,
    "rational_limit": 1e-4,
    "potential_match": 1e-8,
    "jacobian_DW": 1e-6,
    "sigma_factorization": 1e-6,
    "trig_degeneration_I": 1e-5,
    "trig_degeneration_II": 1e-5,
    "discriminant_trig": 1e-5,
    "eigenfunction_residual": 1e-6,
    "matushko_n2": float("inf"),
}

# Checks that only measure and never fail
EXPLORATORY_CHECKS = {"matushko_n2"}

# Degenerate lattices use one period this many times the other
DEGENERATE_PERIOD_RATIO = 1.0e3

# Minimum distance (in units of the smallest period) from lattice points
POLE_EXCLUSION = 0.05

# Word-size primes for modular elimination are taken below this bound
MODULAR_PRIME_BOUND = 2**31
