EXIT_OK = 0
EXIT_EQUIVALENT = 0
EXIT_DIFFERENT = 1
EXIT_INCONCLUSIVE = 2
EXIT_INVALID = 3
