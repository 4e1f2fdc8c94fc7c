import logging
import time
from dataclasses import dataclass, field
from typing import Any, List, Optional

from cytrace.common.utils import to_builtin

logger = logging.getLogger(__name__)

@dataclass
class Violation:
    """
    One failed instance of an identity.

    Args:
        - identity (str): the identity that failed, e.g. 'd_0 t = d_k'
        - degree (int or None): simplicial degree, when there is one
        - witness: a simplex index, a morphism triple, a Witt vector ... that exhibits the failure
        - count (int): how many witnesses failed this same identity in this degree
    """
    identity: str
    degree: Optional[int] = None
    witness: Any = None
    count: int = 1

    def to_dict(self):
        return to_builtin({
            'identity': self.identity,
            'degree': self.degree,
            'witness': self.witness,
            'count': self.count,
        })

    def __str__(self):
        where = f' in degree {self.degree}' if self.degree is not None else ''
        more = f' ({self.count} witnesses)' if self.count > 1 else ''
        return f'{self.identity}{where} fails at {self.witness!r}{more}'

@dataclass
class CheckResult:
    name: str
    passed: bool
    n_cases: int
    violations: List[Violation] = field(default_factory=list)
    seconds: float = 0.
    details: dict = field(default_factory=dict)

    @property
    def passed_field(self):
        return f'{self.name}_passed'

    def to_dict(self):
        return to_builtin({
            'name': self.name,
            'passed': self.passed,
            'n_cases': self.n_cases,
            'seconds': round(self.seconds, 6),
            'violations': [v.to_dict() for v in self.violations],
            'details': self.details,
        })

    def __str__(self):
        verdict = 'pass' if self.passed else 'FAIL'
        lines = [f'{self.name}: {verdict} ({self.n_cases} cases, {self.seconds:.2f}s)']
        for v in self.violations[:5]:
            lines.append(f'  {v}')
        if len(self.violations) > 5:
            lines.append(f'  ... {len(self.violations) - 5} more')
        return '\n'.join(lines)

class Check:
    """
    Parent class for property checks.
    """
    def __init__(self, name):
        self._name = name

    def _compute(self, **kwargs):
        """
        Helper function for running the check.
        Subclasses should implement this.
        Output:
            - n_cases (int): number of instances examined
            - violations (list of Violation)
            - details (dict): extra values to keep in the report
        """
        raise NotImplementedError

    @property
    def name(self):
        """
        Check name.
        Used to name the entries of suite reports.
        """
        return self._name

    def compute(self, return_dict=False, **kwargs):
        """
        Runs the check. This is a wrapper around _compute.
        Output (return_dict=False):
            - result (CheckResult)
        Output (return_dict=True):
            - results (dict): CheckResult.to_dict()
        """
        start = time.perf_counter()
        n_cases, violations, details = self._compute(**kwargs)
        result = CheckResult(
            name=self.name,
            passed=len(violations) == 0,
            n_cases=n_cases,
            violations=list(violations),
            seconds=time.perf_counter() - start,
            details=details or {})
        logger.debug('%s', result)
        if return_dict:
            return result.to_dict()
        return result

class PropertyCheck(Check):
    """
    A check backed by a plain function returning (n_cases, violations) or
    (n_cases, violations, details).
    """
    def __init__(self, name, check_fn):
        self.check_fn = check_fn
        super().__init__(name=name)

    def _compute(self, **kwargs):
        out = self.check_fn(**kwargs)
        if len(out) == 2:
            n_cases, violations = out
            details = {}
        else:
            n_cases, violations, details = out
        return n_cases, violations, details

def expect_failure(name, check_fn):
    """
    Wraps a negative control: the wrapped check passes exactly when check_fn
    reports at least one violation.
    """
    def run(**kwargs):
        out = check_fn(**kwargs)
        n_cases, violations = out[0], out[1]
        if violations:
            return n_cases, [], {'detected': str(violations[0])}
        return n_cases, [Violation(identity=f'{name} should have been rejected')], {}
    return PropertyCheck(name, run)
