from fatcantor.errors import PreconditionError
from fatcantor.geometry import Box
from fatcantor.ring.expressions import RingExpr, Gen, Union, Diff, Inter

__all__ = [
    'clip_to_box',
]


def clip_to_box(e: RingExpr, box: Box) -> RingExpr:
    """
    Pushes the intersection with `box` down to the leaves:

        Gen(x, J) & I     = Gen(x, J & I)
        (A | B) & I       = (A & I) | (B & I)
        (A - B) & I       = (A & I) - B
        (A & B) & I       = (A & I) & B

    The result denotes exactly e & I and has the same leaf count. `box` may
    be unbounded.
    """
    if e.dim != box.dim:
        raise PreconditionError(f'Expression dimension {e.dim} vs box dimension {box.dim}.')
    return _clip(e, box)


def _clip(e: RingExpr, box: Box) -> RingExpr:
    if isinstance(e, Gen):
        return Gen(e.x, e.clip.intersect(box))
    if isinstance(e, Union):
        return Union(_clip(e.left, box), _clip(e.right, box))
    if isinstance(e, Diff):
        return Diff(_clip(e.left, box), e.right)
    if isinstance(e, Inter):
        return Inter(_clip(e.left, box), e.right)
    raise TypeError(f'Unknown expression node {type(e).__name__}.')
