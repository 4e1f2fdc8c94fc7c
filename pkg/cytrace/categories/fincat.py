import itertools
import logging

import numpy as np

from cytrace.common.checks.check import Violation
from cytrace.common.errors import SchemaError

logger = logging.getLogger(__name__)

class FinCategory:
    """
    A finite category stored as tables.

    Args:
        - objects (list): object labels
        - morphisms (list): morphism labels
        - sources (array of int): sources[f] is the object index of the source of f
        - targets (array of int): targets[f] is the object index of the target of f
        - identities (array of int): identities[a] is the morphism index of id_a
        - compose (2d array of int): compose[g, f] is the index of g o f when
          sources[g] == targets[f], and -1 otherwise
        - name (str, optional)
    """
    def __init__(self, objects, morphisms, sources, targets, identities, compose, name=None):
        self._objects = list(objects)
        self._morphisms = list(morphisms)
        self._sources = np.asarray(sources, dtype=np.int64)
        self._targets = np.asarray(targets, dtype=np.int64)
        self._identities = np.asarray(identities, dtype=np.int64)
        self._compose = np.asarray(compose, dtype=np.int64).reshape(len(self._morphisms), len(self._morphisms))
        self._name = name
        self._object_index = {o: a for a, o in enumerate(self._objects)}
        self._morphism_index = {m: f for f, m in enumerate(self._morphisms)}
        self._hom = None
        self.check_init()

    def check_init(self):
        n_obj, n_mor = len(self._objects), len(self._morphisms)
        if len(self._object_index) != n_obj or len(self._morphism_index) != n_mor:
            raise SchemaError('Object and morphism labels must be distinct')
        if self._sources.shape != (n_mor,) or self._targets.shape != (n_mor,):
            raise SchemaError('Every morphism needs exactly one source and one target')
        if n_mor and (min(self._sources.min(), self._targets.min()) < 0
                      or max(self._sources.max(), self._targets.max()) >= n_obj):
            raise SchemaError('A morphism has a source or target that is not an object')
        if self._identities.shape != (n_obj,):
            raise SchemaError('Every object needs exactly one identity')
        for a, f in enumerate(self._identities):
            if not 0 <= f < n_mor or self._sources[f] != a or self._targets[f] != a:
                raise SchemaError(f'The identity of object {self._objects[a]!r} is not an endomorphism of it')
        composable = self._sources[:, None] == self._targets[None, :]
        defined = self._compose >= 0
        if np.any(composable != defined):
            g, f = [int(v[0]) for v in np.nonzero(composable != defined)]
            raise SchemaError(
                f'Composition table is wrong for the pair ({self._morphisms[g]!r}, {self._morphisms[f]!r}): '
                f'it must be defined exactly on composable pairs')
        if np.any(self._compose >= n_mor):
            raise SchemaError('Composition table refers to a morphism that does not exist')
        g, f = np.nonzero(composable)
        h = self._compose[g, f]
        bad = (self._sources[h] != self._sources[f]) | (self._targets[h] != self._targets[g])
        if np.any(bad):
            i = int(np.nonzero(bad)[0][0])
            raise SchemaError(
                f'{self._morphisms[g[i]]!r} o {self._morphisms[f[i]]!r} has the wrong source or target')

    @classmethod
    def from_rule(cls, objects, morphisms, identities, compose_fn, name=None):
        """
        Builds a category from labels and a composition rule on labels.

        Args:
            - objects (list): object labels
            - morphisms (list of tuple): (label, source label, target label)
            - identities (dict): object label -> morphism label
            - compose_fn (callable): (g label, f label) -> label of g o f, only called on composable pairs
        """
        objects = list(objects)
        object_index = {o: a for a, o in enumerate(objects)}
        labels = [m[0] for m in morphisms]
        index = {m: f for f, m in enumerate(labels)}
        try:
            sources = [object_index[m[1]] for m in morphisms]
            targets = [object_index[m[2]] for m in morphisms]
        except KeyError as e:
            raise SchemaError(f'Morphism endpoint {e} is not an object')
        compose = np.full((len(labels), len(labels)), -1, dtype=np.int64)
        by_source = {}
        for g, a in enumerate(sources):
            by_source.setdefault(a, []).append(g)
        for f, b in enumerate(targets):
            for g in by_source.get(b, []):
                h = compose_fn(labels[g], labels[f])
                if h not in index:
                    raise SchemaError(f'{labels[g]!r} o {labels[f]!r} = {h!r} is not an enumerated morphism')
                compose[g, f] = index[h]
        try:
            ids = [index[identities[o]] for o in objects]
        except KeyError as e:
            raise SchemaError(f'Missing identity for {e}')
        return cls(objects, labels, sources, targets, ids, compose, name=name)

    @property
    def name(self):
        return self._name

    @property
    def objects(self):
        return self._objects

    @property
    def morphisms(self):
        return self._morphisms

    @property
    def n_objects(self):
        return len(self._objects)

    @property
    def n_morphisms(self):
        return len(self._morphisms)

    @property
    def sources(self):
        return self._sources

    @property
    def targets(self):
        return self._targets

    @property
    def identities(self):
        return self._identities

    @property
    def compose_table(self):
        return self._compose

    def src(self, f):
        return int(self._sources[f])

    def dst(self, f):
        return int(self._targets[f])

    def identity(self, a):
        return int(self._identities[a])

    def compose(self, g, f):
        """
        Index of g o f, or -1 when the pair is not composable.
        """
        return int(self._compose[g, f])

    def object_index(self, label):
        return self._object_index[label]

    def morphism_index(self, label):
        return self._morphism_index[label]

    def hom(self, a, b):
        """
        Morphism indices from object a to object b.
        """
        if self._hom is None:
            self._hom = {}
            for f in range(self.n_morphisms):
                self._hom.setdefault((self.src(f), self.dst(f)), []).append(f)
        return self._hom.get((a, b), [])

    def is_identity(self, f):
        return self._identities[self.src(f)] == f

    def __repr__(self):
        name = f'{self._name!r}, ' if self._name else ''
        return f'FinCategory({name}{self.n_objects} objects, {self.n_morphisms} morphisms)'

def validate_category(C):
    """
    Identity laws and associativity on all composable triples.

    Output:
        - violations (list of Violation): witnesses are morphism labels
    """
    violations = []
    T = C.compose_table
    labels = C.morphisms
    for f in range(C.n_morphisms):
        if T[C.identities[C.dst(f)], f] != f:
            violations.append(Violation('id o f = f', witness=labels[f]))
        if T[f, C.identities[C.src(f)]] != f:
            violations.append(Violation('f o id = f', witness=labels[f]))
    for g in range(C.n_morphisms):
        hs = np.nonzero(T[:, g] >= 0)[0]
        fs = np.nonzero(T[g, :] >= 0)[0]
        if not len(hs) or not len(fs):
            continue
        lhs = T[T[hs, g][:, None], fs[None, :]]
        rhs = T[hs[:, None], T[g, fs][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            h, f = hs[bad[0][0]], fs[bad[0][1]]
            violations.append(Violation('(h o g) o f = h o (g o f)',
                                        witness=(labels[h], labels[g], labels[f]), count=len(bad)))
    return violations

def monoid_category(elements, table, name=None):
    """
    A monoid as a category with one object '*'. table[g][f] is the index of the product g*f,
    read as the composite g o f.
    """
    elements = list(elements)
    n = len(elements)
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (n, n):
        raise SchemaError(f'A monoid on {n} elements needs a {n}x{n} multiplication table')
    if n and (table.min() < 0 or table.max() >= n):
        raise SchemaError('The multiplication table refers to an element that does not exist')
    units = [e for e in range(n)
             if np.all(table[e, :] == np.arange(n)) and np.all(table[:, e] == np.arange(n))]
    if not units:
        raise SchemaError('The multiplication table has no two-sided unit')
    return FinCategory(['*'], elements, np.zeros(n), np.zeros(n), [units[0]], table, name=name)

def is_monoid(C):
    return C.n_objects == 1

def cyclic_group(n):
    """
    Z/n written additively, elements 0..n-1.
    """
    table = [[(g + f) % n for f in range(n)] for g in range(n)]
    return monoid_category(list(range(n)), table, name=f'Z/{n}')

def symmetric_group(n):
    """
    Permutations of 0..n-1 in lexicographic order, g o f the composite of functions.
    """
    elements = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[tuple(g[f[x]] for x in range(n))] for f in elements] for g in elements]
    return monoid_category(['(' + ' '.join(map(str, p)) + ')' for p in elements], table, name=f'S_{n}')

def idempotent_monoid():
    """
    {1, x} with x*x = x.
    """
    return monoid_category(['1', 'x'], [[0, 1], [1, 1]], name='idempotent')

def trivial_category():
    return monoid_category(['1'], [[0]], name='trivial')

def groupoid_example():
    """
    Two objects a, b and an isomorphism u: a -> b with inverse v.
    """
    morphisms = [('id_a', 'a', 'a'), ('id_b', 'b', 'b'), ('u', 'a', 'b'), ('v', 'b', 'a')]
    rule = {('u', 'v'): 'id_b', ('v', 'u'): 'id_a'}

    def compose(g, f):
        if g.startswith('id'):
            return f
        if f.startswith('id'):
            return g
        return rule[(g, f)]

    return FinCategory.from_rule(['a', 'b'], morphisms, {'a': 'id_a', 'b': 'id_b'}, compose, name='groupoid')

BUILTIN_MONOIDS = {
    'trivial': trivial_category,
    'z2': lambda: cyclic_group(2),
    'z3': lambda: cyclic_group(3),
    'z4': lambda: cyclic_group(4),
    's3': lambda: symmetric_group(3),
    'idempotent': idempotent_monoid,
    'groupoid': groupoid_example,
}

def get_builtin_category(name):
    if name not in BUILTIN_MONOIDS:
        raise SchemaError(f'Builtin category {name} not recognized. Must be one of {sorted(BUILTIN_MONOIDS)}.')
    return BUILTIN_MONOIDS[name]()

def is_groupoid_like(C):
    """
    True if every morphism has a two-sided inverse. Morphism sets are discrete, so the
    component category is C itself.
    """
    for f in range(C.n_morphisms):
        back = C.hom(C.dst(f), C.src(f))
        if not any(C.compose(g, f) == C.identity(C.src(f)) and C.compose(f, g) == C.identity(C.dst(f))
                   for g in back):
            return False
    return True

def conjugacy_class_count(C):
    """
    Number of classes of endomorphisms under the relation generated by
    g o f ~ f o g for f: a -> b and g: b -> a. For a group this is the number of
    conjugacy classes.
    """
    endos = [f for f in range(C.n_morphisms) if C.src(f) == C.dst(f)]
    parent = {f: f for f in endos}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in range(C.n_morphisms):
        for g in C.hom(C.dst(f), C.src(f)):
            a, b = find(C.compose(g, f)), find(C.compose(f, g))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return len({find(f) for f in endos})

class FinFunctor:
    """
    A functor between finite categories, stored as index maps. Entries of -1 mark
    objects or morphisms where the functor is undefined; such partial functors
    describe a bounded window of an unbounded one.

    Args:
        - source (FinCategory)
        - target (FinCategory)
        - object_map (array of int)
        - morphism_map (array of int)
    """
    def __init__(self, source, target, object_map, morphism_map, name=None):
        self.source = source
        self.target = target
        self.object_map = np.asarray(object_map, dtype=np.int64)
        self.morphism_map = np.asarray(morphism_map, dtype=np.int64)
        self.name = name
        if self.object_map.shape != (source.n_objects,) or self.morphism_map.shape != (source.n_morphisms,):
            raise SchemaError('A functor needs one image per object and per morphism of its source')
        if np.any(self.object_map >= target.n_objects) or np.any(self.morphism_map >= target.n_morphisms):
            raise SchemaError('A functor image is not an object or morphism of the target')

    @property
    def is_total(self):
        return bool(np.all(self.object_map >= 0) and np.all(self.morphism_map >= 0))

    def obj(self, a):
        return int(self.object_map[a])

    def mor(self, f):
        return int(self.morphism_map[f])

def validate_functor(F):
    """
    Checks that F preserves sources, targets, identities and composites wherever
    it is defined, and that its domain of definition is closed under composition.
    """
    C, D = F.source, F.target
    violations = []
    name = F.name or 'F'
    for f in range(C.n_morphisms):
        Ff = F.mor(f)
        if Ff < 0:
            continue
        if F.obj(C.src(f)) != D.src(Ff) or F.obj(C.dst(f)) != D.dst(Ff):
            violations.append(Violation(f'{name} preserves sources and targets', witness=C.morphisms[f]))
    for a in range(C.n_objects):
        if F.obj(a) >= 0 and F.mor(C.identity(a)) != D.identity(F.obj(a)):
            violations.append(Violation(f'{name}(id) = id', witness=C.objects[a]))
    for g in range(C.n_morphisms):
        Fg = F.mor(g)
        if Fg < 0:
            continue
        for f in np.nonzero(C.compose_table[g, :] >= 0)[0]:
            f = int(f)
            Ff = F.mor(f)
            if Ff < 0:
                continue
            Fgf = F.mor(C.compose(g, f))
            if Fgf < 0 or Fgf != D.compose(Fg, Ff):
                violations.append(Violation(f'{name}(g o f) = {name}(g) o {name}(f)',
                                            witness=(C.morphisms[g], C.morphisms[f])))
    return violations

def isomorphism_violations(F):
    """
    Checks that F, restricted to where it is defined, is a functor that is bijective
    onto all objects and morphisms of its target.
    """
    violations = validate_functor(F)
    name = F.name or 'F'
    for kind, images, size, labels in (
            ('objects', F.object_map, F.target.n_objects, F.source.objects),
            ('morphisms', F.morphism_map, F.target.n_morphisms, F.source.morphisms)):
        defined = np.nonzero(images >= 0)[0]
        values, first, counts = np.unique(images[defined], return_index=True, return_counts=True)
        if np.any(counts > 1):
            hit = values[counts > 1][0]
            twins = [labels[x] for x in defined[images[defined] == hit][:2]]
            violations.append(Violation(f'{name} injective on {kind}', witness=tuple(twins)))
        if len(values) != size:
            missing = sorted(set(range(size)) - set(values.tolist()))[0]
            target_labels = F.target.objects if kind == 'objects' else F.target.morphisms
            violations.append(Violation(f'{name} surjective on {kind}', witness=target_labels[missing]))
    return violations

def compose_functors(G, F, name=None):
    """
    G after F; undefined wherever either is.
    """
    def chain(first, second):
        out = np.full(len(first), -1, dtype=np.int64)
        ok = first >= 0
        out[ok] = second[first[ok]]
        return out
    return FinFunctor(F.source, G.target, chain(F.object_map, G.object_map),
                      chain(F.morphism_map, G.morphism_map), name=name)

def identity_functor(C):
    return FinFunctor(C, C, np.arange(C.n_objects), np.arange(C.n_morphisms), name='id')

def naturality_violations(F, G, components, name='eta'):
    """
    Checks that components[a]: F(a) -> G(a) is natural in a, for functors F, G: C -> D.
    """
    C, D = F.source, F.target
    violations = []
    for a in range(C.n_objects):
        eta = components[a]
        if eta < 0 or D.src(eta) != F.obj(a) or D.dst(eta) != G.obj(a):
            violations.append(Violation(f'{name} component has the right type', witness=C.objects[a]))
    if violations:
        return violations
    for f in range(C.n_morphisms):
        lhs = D.compose(G.mor(f), components[C.src(f)])
        rhs = D.compose(components[C.dst(f)], F.mor(f))
        if lhs != rhs or lhs < 0:
            violations.append(Violation(f'{name} natural', witness=C.morphisms[f]))
    return violations

def product_category(C, D, name=None):
    objects = [(a, b) for a in C.objects for b in D.objects]
    morphisms = [((f, g), (C.objects[C.src(i)], D.objects[D.src(j)]), (C.objects[C.dst(i)], D.objects[D.dst(j)]))
                 for i, f in enumerate(C.morphisms) for j, g in enumerate(D.morphisms)]
    identities = {(a, b): (C.morphisms[C.identity(x)], D.morphisms[D.identity(y)])
                  for x, a in enumerate(C.objects) for y, b in enumerate(D.objects)}

    def compose(h, k):
        f = C.morphisms[C.compose(C.morphism_index(h[0]), C.morphism_index(k[0]))]
        g = D.morphisms[D.compose(D.morphism_index(h[1]), D.morphism_index(k[1]))]
        return (f, g)

    return FinCategory.from_rule(objects, morphisms, identities, compose, name=name)

def slice_category(C, x, name=None):
    """
    The category (C | x): objects are morphisms f: a -> x, and a morphism from f to f'
    is a u with f' o u = f, labelled (u, f, f').
    """
    objects = [C.morphisms[f] for f in range(C.n_morphisms) if C.dst(f) == x]
    morphisms, identities = [], {}
    for f in range(C.n_morphisms):
        if C.dst(f) != x:
            continue
        for f2 in range(C.n_morphisms):
            if C.dst(f2) != x:
                continue
            for u in C.hom(C.src(f), C.src(f2)):
                if C.compose(f2, u) == f:
                    morphisms.append(((C.morphisms[u], C.morphisms[f], C.morphisms[f2]),
                                      C.morphisms[f], C.morphisms[f2]))
        identities[C.morphisms[f]] = (C.morphisms[C.identity(C.src(f))], C.morphisms[f], C.morphisms[f])

    def compose(v, u):
        w = C.compose(C.morphism_index(v[0]), C.morphism_index(u[0]))
        return (C.morphisms[w], u[1], v[2])

    return FinCategory.from_rule(objects, morphisms, identities, compose,
                                 name=name or f'({C.name} | {C.objects[x]})')

def full_subcategory(C, keep, name=None):
    """
    The full subcategory on the object indices in keep, with the inclusion functor.
    """
    keep = sorted(keep)
    kept_objects = set(keep)
    morphisms = [f for f in range(C.n_morphisms) if C.src(f) in kept_objects and C.dst(f) in kept_objects]
    obj_new = {a: i for i, a in enumerate(keep)}
    mor_new = np.full(C.n_morphisms, -1, dtype=np.int64)
    mor_new[morphisms] = np.arange(len(morphisms))
    T = C.compose_table[np.ix_(morphisms, morphisms)]
    T = np.where(T >= 0, mor_new[np.maximum(T, 0)], -1)
    sub = FinCategory([C.objects[a] for a in keep], [C.morphisms[f] for f in morphisms],
                      [obj_new[C.src(f)] for f in morphisms], [obj_new[C.dst(f)] for f in morphisms],
                      [mor_new[C.identity(a)] for a in keep], T, name=name)
    inclusion = FinFunctor(sub, C, keep, morphisms, name='inclusion')
    return sub, inclusion

def comma_over(C, x):
    """
    (C | x) for an object label x.
    """
    return slice_category(C, C.object_index(x))
