"""Pure-Python fraction-free three-term recurrence (fallback backend).

State is (P_prev, P_cur, Q_prev, Q_cur); each step applies

    P_new = beta * P_cur + gamma * P_prev

and likewise for Q, with arbitrary-precision integers.
"""

BACKEND = "python"


def advance(beta, gamma, state):
    """Run the recurrence over all (beta, gamma) pairs and return the final state."""
    p1, p0, q1, q0 = state
    for b, g in zip(beta, gamma):
        p1, p0 = p0, b * p0 + g * p1
        q1, q0 = q0, b * q0 + g * q1
    return p1, p0, q1, q0


def trajectory(beta, gamma, state):
    """Like advance, but also return every intermediate (P, Q) pair."""
    p1, p0, q1, q0 = state
    out = []
    for b, g in zip(beta, gamma):
        p1, p0 = p0, b * p0 + g * p1
        q1, q0 = q0, b * q0 + g * q1
        out.append((p0, q0))
    return (p1, p0, q1, q0), out
