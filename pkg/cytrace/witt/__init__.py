from .witt_vector import WittVector, from_series, ghost, witt_add, witt_mul, frobenius_witt, restrict_witt
from .trace import trc0, char_series, trace_property_suite
