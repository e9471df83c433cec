""" Constants """

FLOAT_FORMAT = '%.17g'

EVAL_POINTS = 2 ** 15
SUP_NORM_POINTS = 2 ** 12

OVERFLOW_GUARD = 1e300
MAX_FACTORIAL_ORDER = 170
EXACT_FACTORIAL_ORDER = 20
MAX_ENUMERATION_DIM = 12

BERNOULLI_MAX_ORDER = 12
STIRLING_MAX = 30
EULERIAN_MAX = 15
DERIVATIVE_MAX_ORDER = 20
MULTI_INDEX_MAX_ORDER = 8

TIE_TOLERANCE = 1e-14
LAMBDA_OFFSET = 1e-3
LAMBDA_GRID_SIZE = 20

GV_HEADER = '# latticeflow generating vector'
NETWORK_HEADER = 'latticeflow-network'
NETWORK_FORMAT_VERSION = 1

RECORD_COLUMNS = ['activation', 'mode', 'N', 'seed', 'E_T', 'E_G_est', 'gap', 'epochs', 'wall_s']
AGGREGATE_COLUMNS = ['activation', 'mode', 'N', 'E_T', 'E_G_est', 'gap', 'epochs', 'runs']
PLOT_COLUMNS = ['panel', 'series', 'x', 'y']
TRAINING_LOG_COLUMNS = ['epoch', 'E_T', 'objective']
PROFILE_COLUMNS = ['quantity', 'index', 'value']
BASELINE_COLUMNS = ['method', 'N', 'L2_error']
