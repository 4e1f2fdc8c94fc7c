from cytrace.categories.fincat import FinFunctor, validate_category, validate_functor
from cytrace.categories.indexcat import IndexMorphism, build_index_category, index_circle_category
from cytrace.common.checks.check import PropertyCheck, Violation
from cytrace.suites.cytrace_suite import CytraceSuite

def forget_rotation(B, n, circle=None, index=None):
    """
    The functor from the circle-enlarged index category that drops the rotation z.
    """
    circle = circle or index_circle_category(B, n)
    index = index or build_index_category(B)
    morphism_map = [index.morphism_index(IndexMorphism(*label[:4])) for label in circle.morphisms]
    return FinFunctor(circle, index, list(range(circle.n_objects)), morphism_map, name='forget')

class IndexCircleSuite(CytraceSuite):
    """
    The index category enlarged by a circle of finite order: a valid category whose
    projection onto the index category is a functor, full on hom-sets with fibers of size n.
    """
    _suite_name = 'index_circle'
    DEFAULT_BOUNDS = {
        'bound': 12,
        'order': [2, 3, 4],
    }

    def get_checks(self):
        B = self._bounds['bound']
        index = build_index_category(B)
        circles = {n: index_circle_category(B, n) for n in self._bounds['order']}

        def category_laws():
            violations = []
            for n, C in circles.items():
                violations += [Violation(v.identity, degree=v.degree, witness=(n, v.witness), count=v.count)
                               for v in validate_category(C)]
            return len(circles), violations

        def forgetful():
            violations = []
            for n, C in circles.items():
                F = forget_rotation(B, n, circle=C, index=index)
                violations += validate_functor(F)
                if C.n_morphisms != n * index.n_morphisms:
                    violations.append(Violation('|Hom| = n |Hom(I)|', witness=(n, C.n_morphisms)))
            return len(circles), violations

        return [
            PropertyCheck('category_laws', category_laws),
            PropertyCheck('forgetful', forgetful),
        ]
