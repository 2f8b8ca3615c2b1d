ENV_TEMPLATE = [
    "CKAH_BOUND=12",
    "CKAH_MAX_LANGUAGE_SIZE=200000",
    "CKAH_MAX_LEAF_COUNT=24",
    "CKAH_MAX_ITERATIONS=2000000",
    "CKAH_OMEGA_CAP=6",
    "CKAH_ORACLE_LIMIT=12",
    "CKAH_STAR_SLACK=4",
    "CKAH_LOG_LEVEL=WARNING",
]

with open(".env", "w") as f:
    f.write("\n".join(ENV_TEMPLATE))
