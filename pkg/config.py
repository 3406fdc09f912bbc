import os


class Config:
    BASE_DIR = os.path.abspath(os.path.dirname(__file__))

    # Largest finite ring that may be enumerated (EPKIT_ENUM_CAP).
    ENUM_CAP = 10 ** 6

    DEFAULT_SEED = 42
    DEFAULT_COUNT = 100
    N_EP_DEFAULT = 3
    N_EP_MAX = 8

    REPORT_SCHEMA_VERSION = '1.0'

    DEFAULT_CORPORA = (
        {'ring': 'Mat:2:GF2', 'source': 'exhaustive'},
        {'ring': 'Mat:2:GF3', 'source': 'exhaustive'},
        {'ring': 'Zmod:6', 'source': 'exhaustive'},
        {'ring': 'Zmod:12', 'source': 'exhaustive'},
        {'ring': 'Mat:3:Q', 'source': 'random', 'seed': 42, 'count': 100},
    )

    LOG_LEVEL = 'WARNING'
