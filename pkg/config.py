# === File: config.py ===

import os
from dotenv import load_dotenv

# Load environment variables from the .env file
load_dotenv()


# --- Application Configuration ---
DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'
# --- Logging Configuration ---
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_FILE = os.getenv('LOG_FILE', 'logs/polares.log')
LOG_FORMAT = os.getenv('LOG_FORMAT', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')


# --- Exact Arithmetic ---
# Starting precision of the pi enclosure; doubled until a sign is certified
PI_PRECISION_BITS = int(os.getenv('PI_PRECISION_BITS', '128'))
# Precision of cartesian enclosures shown in reports
DISPLAY_PRECISION_BITS = int(os.getenv('DISPLAY_PRECISION_BITS', '64'))
# Self-intersection root boxes are refined below 2**-CERTIFICATION_BITS
CERTIFICATION_BITS = int(os.getenv('CERTIFICATION_BITS', '40'))


# --- Self-intersection Configuration ---
# Only |k| <= K_CAP is solved when the family of self-intersections is infinite
K_CAP = int(os.getenv('K_CAP', '3'))
# Process pool size for per-(system, k) solving; 1 keeps everything in-process
MAX_WORKERS = int(os.getenv('MAX_WORKERS', '1'))


# --- Plot Configuration ---
R_CAP = float(os.getenv('R_CAP', '50'))
# theta_cap = THETA_CAP_PI_MULTIPLE * pi
THETA_CAP_PI_MULTIPLE = int(os.getenv('THETA_CAP_PI_MULTIPLE', '40'))
SAMPLING_BUDGET = int(os.getenv('SAMPLING_BUDGET', '20000'))
INITIAL_SAMPLES = int(os.getenv('INITIAL_SAMPLES', '64'))
# Fraction of the viewport diagonal
CHORD_TOLERANCE = float(os.getenv('CHORD_TOLERANCE', '1e-3'))
OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'out')


# --- Oracle Configuration ---
ORACLE_SAMPLES = int(os.getenv('ORACLE_SAMPLES', '20000'))
ORACLE_TOLERANCE = float(os.getenv('ORACLE_TOLERANCE', '1e-6'))
ORACLE_LIMIT_TOLERANCE = float(os.getenv('ORACLE_LIMIT_TOLERANCE', '1e-6'))
# Cartesian distance within which a numeric and a certified self-intersection match
ORACLE_MATCH_TOLERANCE = float(os.getenv('ORACLE_MATCH_TOLERANCE', '1e-6'))


# --- Report Cache (SQLAlchemy) ---
DATABASE_CONNECTION_STRING = os.getenv('DATABASE_CONNECTION_STRING', 'sqlite:///polares_cache.db')
CACHE_ENABLED = os.getenv('CACHE_ENABLED', 'True').lower() == 'true'


# --- HTTP Service ---
API_HOST = os.getenv('API_HOST', '0.0.0.0')
API_PORT = int(os.getenv('API_PORT', '8000'))
ANALYZE_RATE_LIMIT = os.getenv('ANALYZE_RATE_LIMIT', '10/minute')
