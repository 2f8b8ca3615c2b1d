# Binding strength, loosest first
PLUS_LEVEL = 0
PAR_LEVEL = 1
SEQ_LEVEL = 2
STAR_LEVEL = 3
ATOMIC_LEVEL = 4

OR_LEVEL = 0
AND_LEVEL = 1
NOT_LEVEL = 2
BOOL_ATOMIC_LEVEL = 3
