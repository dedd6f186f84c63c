import os
import json
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
ENV_PATH = BASE_DIR / '.env'
RATE_GRIDS_PATH = Path(__file__).resolve().parent / 'rate_grids.json'

DEFAULT_ENV = {
    # Code parameters used when a command gives no --q/--m/--x
    'QALOCO_Q': '4',
    'QALOCO_M': '26',
    'QALOCO_X': '1',
    # Longest codeword length a shared cardinality table is built for
    'QALOCO_M_MAX': '256',
    # Stream I/O
    'QALOCO_FORMAT': 'text',  # 'text' or 'binary'
    'QALOCO_STRICT': '0',  # 1 checks every bridge on decode
    'QALOCO_WORKERS': '4',
    # Oracle enumeration refuses q^m above this
    'QALOCO_ENUM_LIMIT': '10000000',
    'QALOCO_LOG_LEVEL': 'INFO',
    'QALOCO_PORT': '8000',
}

INT_KEYS = ('QALOCO_Q', 'QALOCO_M', 'QALOCO_X', 'QALOCO_M_MAX', 'QALOCO_WORKERS',
            'QALOCO_ENUM_LIMIT', 'QALOCO_PORT')

# Codeword lengths per x and q for the rate tables
DEFAULT_RATE_GRIDS = {
    "1": {
        "4": [14, 26, 49, 77, 97],
        "8": [18, 26, 44, 71, 103],
        "16": [18, 27, 45, 66, 111],
        "32": [19, 29, 49, 70, 117],
    },
    "2": {
        "4": [20, 38, 57, 76, 96],
        "8": [22, 32, 52, 73, 108],
        "16": [24, 34, 51, 73, 100],
        "32": [25, 36, 56, 77, 108],
    },
}


def load_env() -> None:
    """Load .env into os.environ with defaults.

    Values already exported in the shell win over .env, which wins over
    DEFAULT_ENV.
    """
    if ENV_PATH.exists():
        for line in ENV_PATH.read_text().splitlines():
            if not line or line.startswith('#') or '=' not in line:
                continue
            key, value = line.split('=', 1)
            os.environ.setdefault(key.strip(), value.strip())

    for key, value in DEFAULT_ENV.items():
        os.environ.setdefault(key, value)


def save_env(new_values: dict) -> None:
    """Persist config values to .env and os.environ. Unknown keys are ignored."""
    data = {**DEFAULT_ENV}
    data.update({k: str(v) for k, v in os.environ.items() if k in DEFAULT_ENV})
    data.update({k: str(v) for k, v in new_values.items() if k in DEFAULT_ENV})

    ENV_PATH.write_text(''.join(f"{k}={data[k]}\n" for k in DEFAULT_ENV))

    for k in DEFAULT_ENV:
        os.environ[k] = data[k]


def load_rate_grids() -> dict:
    """Rate-table grids as {x: {q: [m, ...]}} with int keys, from disk or defaults."""
    raw = DEFAULT_RATE_GRIDS
    if RATE_GRIDS_PATH.exists():
        raw = json.loads(RATE_GRIDS_PATH.read_text())
    return {int(x): {int(q): [int(m) for m in ms] for q, ms in by_q.items()} for x, by_q in raw.items()}


def save_rate_grids(grids: dict) -> None:
    data = {str(x): {str(q): list(ms) for q, ms in by_q.items()} for x, by_q in grids.items()}
    RATE_GRIDS_PATH.write_text(json.dumps(data, indent=2))


def get_config() -> dict:
    load_env()
    config = {k: os.environ[k] for k in DEFAULT_ENV}
    for key in INT_KEYS:
        try:
            config[key] = int(config[key])
        except ValueError:
            raise RuntimeError(f"{key} must be an integer, got {config[key]!r}")
    config['QALOCO_STRICT'] = config['QALOCO_STRICT'].strip().lower() in ('1', 'true', 'yes')
    config['rate_grids'] = load_rate_grids()
    return config
