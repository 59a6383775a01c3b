import os

# Discretization
GRID_NODES = 201
MODES_MAX = 20

# Exact comparisons fall back to this relative tolerance for floats
REL_TOL = 1e-12

# Newton corrector
NEWTON_TOL = 1e-10  # sup-norm of the residual
NEWTON_MAX_ITER = 25
NEWTON_DAMPING_FACTOR = 0.5
NEWTON_DAMPING_MIN = 2**-8
ROUNDOFF_FACTOR = 16  # residual floor = factor * eps * max|flux| / h^2

# Pseudo-arclength continuation (scaled arclength)
DS_INITIAL = 1e-2
DS_MIN = 1e-5
DS_MAX = 5e-2
DS_GROWTH = 1.3
DS_GROWTH_AFTER = 3
MAX_STEPS = 400
FOLD_THRESHOLD = 1e-6
EVENT_TOL = 1e-8  # arclength width of a refined event bracket
EVENT_MAX_BISECTIONS = 40
HOMOGENEOUS_SAMPLES = 400
HOMOGENEOUS_XTOL = 1e-12
SWITCH_EPSILON = 1e-2
SECONDARY_DEPTH = 2
PRIMARY_BRANCHES = 3
POSITIVITY_TOL = 1e-10

# Stability
STABILITY_REAL_TOL = 1e-9
STABILITY_IMAG_TOL = 1e-8

# Time integration
DT_INITIAL = 1e-3
DT_MIN = 1e-8
DT_MAX = 1.0
STEADY_TOL = 1e-9
MAX_TIME_STEPS = 20000

# Output
ARCHIVE_CODEC = "msgpack"  # or "json"
CSV_FLOAT_FORMAT = "{:.12g}"
SVG_WIDTH = 720
SVG_HEIGHT = 480
BRANCH_COLORS = [
    "#1f4fd8",  # blue
    "#d62728",  # red
    "#2ca02c",  # green
    "#c21fc2",  # magenta
    "#ff8c00",  # orange
    "#8fb8ff",  # pastel blue
    "#ff9f9f",  # pastel red
    "#9fe39f",  # pastel green
    "#e7a6e7",  # pastel magenta
    "#ffd29f",  # pastel orange
]
HOMOGENEOUS_COLOR = "#000000"

# Workers
WORKERS = os.cpu_count() or 1

# Logging
LOG_LEVEL = os.getenv("SKT_LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("SKT_LOG_FILE")  # JSON lines; unset disables the file sink
LOG_FILE_RETENTION = 3
LOG_FILE_ROTATION = 5  # MiB
LOG_TEXT = "skt-bifurcation"
