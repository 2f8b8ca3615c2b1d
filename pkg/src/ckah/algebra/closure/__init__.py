EXCH_PACK = "exch"
OBS_PACK = "obs"
CONTRACTION_PACK = "contr-atoms"
NO_PACK = "none"
DEMO_BAKE_PACK = "demo-bake"
DEMO_PRINT_PACK = "demo-print"

PACK_NAMES = (NO_PACK, EXCH_PACK, OBS_PACK, CONTRACTION_PACK, DEMO_BAKE_PACK, DEMO_PRINT_PACK)
