from .fincat import FinCategory, FinFunctor, validate_category, get_builtin_category
from .barcat import cyclic_bar, nerve, diagonal_restriction, frobenius_bar, project_to_nerve
from .indexcat import build_index_category, factor_unique, grothendieck_construct, check_theta_iso
