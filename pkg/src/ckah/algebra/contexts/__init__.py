from ckah.algebra.pomsets import HOLE
from ckah.algebra.pomsets.models import Prim


HOLE_LEAF = Prim(HOLE)
