import os
from dotenv import load_dotenv

load_dotenv()

VERSION = '0.3.0'

# JL transform settings (defaults from the experiment protocol)
EPSILON = float(os.getenv('JL_EPSILON', 0.5))
DIM_CONSTANT = float(os.getenv('JL_DIM_CONSTANT', 2.0))
LOG_BASE = 2  # target dimension uses log2(n)
SEED = int(os.getenv('JL_SEED', 0))

# Numerical tolerances
TAU_REL = float(os.getenv('JL_TAU_REL', 1e-9))  # zero-eigenvalue threshold, relative to max(1, max|λ|)
SYMMETRY_TOL = 1e-9  # ingestion tolerance, relative to max(1, max|D|)
GRAM_SYMMETRY_TOL = 1e-8
REPRODUCTION_TOL = 1e-6
NULL_TOL = 1e-12  # |pq interval| <= NULL_TOL * euclid interval counts as a null pair
NON_EUCLIDEAN_FACTOR = 10.0  # recover_centers rejects eigenvalues below -factor * tau

# k-means
KMEANS_RESTARTS = int(os.getenv('KMEANS_RESTARTS', 10))
KMEANS_MAX_ITER = int(os.getenv('KMEANS_MAX_ITER', 100))

# Synthetic datasets
SIMPLEX_DOMINANCE_PER_POINT = float(os.getenv('SIMPLEX_DOMINANCE_PER_POINT', 20.0))  # alpha = this * n
SIMPLEX_GAP_POWER = 1.0
BALL_DIM = int(os.getenv('BALL_DIM', 10))
BALL_RMIN = float(os.getenv('BALL_RMIN', 0.5))
BALL_RMAX = float(os.getenv('BALL_RMAX', 2.0))

# Validation output
PLOT_SAMPLE_PAIRS = 20
RESIDUAL_SAMPLE_PAIRS = 100
RESIDUAL_DISPLAY_SHRINK = 100.0  # residual plots draw 4*eps*(r/shrink)^2

# Files
CHART_SAVE_PATH = os.getenv('JL_CHART_PATH', 'charts')
CHART_FORMAT = 'png'
