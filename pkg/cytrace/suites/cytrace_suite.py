import logging

from tqdm import tqdm

from cytrace.common.errors import UsageError
from cytrace.common.rings import get_ring

logger = logging.getLogger(__name__)

class CytraceSuite:
    """
    Shared class for all cytrace suites.
    A suite is a named list of checks. Each check examines every instance of one
    family of identities within the suite's bounds and reports the violations it finds.
    Bounds are read from DEFAULT_BOUNDS and may be overridden per key.
    """
    DEFAULT_BOUNDS = {}
    # bounds holding ring tags rather than positive integers
    RING_BOUNDS = ('rings',)

    def __init__(self, seed=0, show_progress=False, **bounds):
        unknown = sorted(set(bounds) - set(self.DEFAULT_BOUNDS))
        if unknown:
            raise UsageError(
                f'Bounds {unknown} are not recognized by {self._suite_name}. '
                f'Must be among {sorted(self.DEFAULT_BOUNDS)}.')
        self._bounds = {**self.DEFAULT_BOUNDS, **bounds}
        self._seed = int(seed)
        self._show_progress = show_progress
        self.check_init()

    def check_init(self):
        """
        Convenience function to check that the suite is properly configured.
        """
        assert hasattr(self, '_suite_name'), 'CytraceSuite is missing _suite_name.'
        for key, value in self._bounds.items():
            values = value if isinstance(value, (list, tuple)) else [value]
            if key in self.RING_BOUNDS:
                for tag in values:
                    get_ring(tag)
                continue
            for v in values:
                if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                    raise UsageError(f'Bound {key} of {self._suite_name} must be a positive integer, got {v!r}')

    @property
    def suite_name(self):
        """
        A string that identifies the suite, e.g., 'witt_ring', 'subdivision'.
        """
        return self._suite_name

    @property
    def bounds(self):
        return dict(self._bounds)

    @property
    def seed(self):
        return self._seed

    def get_checks(self):
        """
        Output:
            - checks (list of Check): the checks of this suite, in report order
        """
        raise NotImplementedError

    def eval(self):
        """
        Runs every check of the suite.
        Output:
            - results (dict): check name -> CheckResult
            - results_str (str): Pretty print version of the results
        """
        results, results_str = {}, f'=== {self.suite_name} ===\n'
        checks = self.get_checks()
        for check in tqdm(checks, desc=self.suite_name, disable=not self._show_progress, leave=False):
            check_results, check_str = self.standard_eval(check)
            results.update(check_results)
            results_str += check_str
        return results, results_str

    @staticmethod
    def standard_eval(check, **kwargs):
        """
        Args:
            - check (Check): Check to run
        Output:
            - results (dict): check name -> CheckResult
            - results_str (str): Pretty print version of the results
        """
        result = check.compute(**kwargs)
        return {check.name: result}, f'{result}\n'
