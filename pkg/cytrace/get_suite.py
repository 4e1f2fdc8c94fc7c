import cytrace

def get_suite(suite: str, **suite_kwargs):
    """
    Returns the appropriate cytrace suite class.
    Input:
        suite (str): Name of the suite
        suite_kwargs: Other keyword arguments to pass to the suite constructors,
                      e.g. seed, show_progress and per-suite bounds.
    Output:
        The specified CytraceSuite class.
    """
    if suite not in cytrace.supported_suites:
        raise ValueError(f'The suite {suite} is not recognized. Must be one of {cytrace.supported_suites}.')

    if suite == 'index_relations':
        from cytrace.suites.index_relations_suite import IndexRelationsSuite
        return IndexRelationsSuite(**suite_kwargs)

    elif suite == 'grothendieck':
        from cytrace.suites.grothendieck_suite import GrothendieckSuite
        return GrothendieckSuite(**suite_kwargs)

    elif suite == 'theta':
        from cytrace.suites.theta_suite import ThetaSuite
        return ThetaSuite(**suite_kwargs)

    elif suite == 'witt_ring':
        from cytrace.suites.witt_ring_suite import WittRingSuite
        return WittRingSuite(**suite_kwargs)

    elif suite == 'trace_laws':
        from cytrace.suites.trace_laws_suite import TraceLawsSuite
        return TraceLawsSuite(**suite_kwargs)

    elif suite == 'index_circle':
        from cytrace.suites.index_circle_suite import IndexCircleSuite
        return IndexCircleSuite(**suite_kwargs)

    elif suite == 'subdivision':
        from cytrace.suites.subdivision_suite import SubdivisionSuite
        return SubdivisionSuite(**suite_kwargs)

    elif suite == 'bar_operators':
        from cytrace.suites.bar_operators_suite import BarOperatorsSuite
        return BarOperatorsSuite(**suite_kwargs)

    elif suite == 'conjugacy':
        from cytrace.suites.conjugacy_suite import ConjugacySuite
        return ConjugacySuite(**suite_kwargs)

    elif suite == 'coherence':
        from cytrace.suites.coherence_suite import CoherenceSuite
        return CoherenceSuite(**suite_kwargs)

    elif suite == 'semidirect_theta':
        from cytrace.suites.semidirect_theta_suite import SemidirectThetaSuite
        return SemidirectThetaSuite(**suite_kwargs)
