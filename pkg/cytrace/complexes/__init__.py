from .simplicial import CyclicSet, SimplicialMap, SimplicialSet, validate, validate_map
from .builtin import get_builtin
from .subdivision import edgewise_subdivide, fixed_subcomplex, dbar_map, verify_cube_face_relations
from .homology import homology, smith_normal_form
