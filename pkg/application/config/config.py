from os import environ


class Config:
    # General Config
    APP_NAME = "spin-tunneling-lab"
    VERSION = "0.4.0"
    LOG_LEVEL = "INFO"

    # Only output-colour suppression is read from the environment.
    NO_COLOR = environ.get("NO_COLOR") is not None

    # Numeric defaults
    HERMITIAN_TOL = 1e-12
    DEGENERACY_TOL = 1e-8
    DEGENERACY_FLOOR = 1e-13
    GAUGE_TOL = 1e-10
    VERTEX_TOL = 1e-9
    GROUP_TOL = 1e-8
    GAP_RATIO_THRESHOLD = 10.0
    RICHARDSON_STEP_DIVISOR = 100.0
    QUADRATURE_TOL = 1e-10

    # Sweeps
    SWEEP_WORKERS = 4
