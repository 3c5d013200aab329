"""Deterministic collision oracle.

The rule table holds every interaction the game shipped with, phrased the
way a raw model completion would arrive, so mock mode exercises the same
completion-parsing path as live mode. Unknown pairs fall back to a total
deterministic "a-b fusion" rule.
"""

from __future__ import annotations

# (ball, paddle) -> raw completion text, lowercase keys.
RULE_TABLE: dict[tuple[str, str], str] = {
    # Shipped match outcomes.
    ("salmon", "knife"): " sushi.",
    ("fried egg", "time"): " rotten egg.",
    ("fire", "ice"): " water.",
    ("family", "time"): " memory.",
    ("memory", "disaster"): " PTSD.",
    ("pineapple", "banana"): " smoothie.",
    ("apple", "tennis racket"): " apple pie.",
    ("dinner", "trash can"): " maggot.",
    # Few-shot context pairs, kept in their original phrasing.
    ("loaf of bread", "cheese"): " A sandwich object.",
    ("pen", "paper"): " a notebook object.",
    ("meat", "clock"): " a bacteria object.",
    ("music note", "cube"): " an instrument.",
    ("water", "air"): " ice.",
    ("tree", "clock"): " a dead tree.",
    ("egg", "clock"): " a chicken.",
    ("cube", "wheel"): " a car.",
    ("egg", "frying pan"): " a fried egg.",
    ("balloon", "pin"): " a popped balloon.",
    ("bread", "clock"): " a moldy bread.",
    ("caterpillar", "clock"): " a butterfly.",
    ("water", "fire"): " steam.",
    ("seed", "water"): " a plant.",
}


def lookup(ball: str, paddle: str) -> str:
    """Raw completion for a pair; total and order-independent per pair."""
    key = (ball.strip().lower(), paddle.strip().lower())
    hit = RULE_TABLE.get(key)
    if hit is not None:
        return hit
    return f" {key[0]}-{key[1]} fusion."
