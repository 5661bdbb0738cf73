from fatcantor.ring import RingExpr, Gen, Union, Diff, Inter

__all__ = [
    'positive_hull',
]


def positive_hull(e: RingExpr) -> RingExpr:
    """
    Gen/Union expression containing e: subtrahends of differences and the
    right operands of intersections are dropped. Pure-positive expressions
    are returned as they are.
    """
    if e.is_pure_positive:
        return e
    if isinstance(e, Union):
        return Union(positive_hull(e.left), positive_hull(e.right))
    if isinstance(e, (Diff, Inter)):
        return positive_hull(e.left)
    raise TypeError(f'Unknown expression node {type(e).__name__}.')
