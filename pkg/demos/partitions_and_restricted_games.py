"""
Splitting coalitions along light edges
======================================

A coalition of players on a weighted graph does not always act as one.
Here it breaks apart wherever its cheapest internal links sit, and the
game is re-evaluated block by block.
"""

from gridlock.graph import WeightedGraph, members
from gridlock.partitions import p_components, p_min, tilde_p_min
from gridlock.games import UnanimityGame, restricted_game

# a path 0-1-2-3 whose middle edge is cheap, plus a separate edge 4-5
G = WeightedGraph(6, [(0, 1, 2), (1, 2, 1), (2, 3, 2), (4, 5, 3)])
A = 0b111111

for name, split in (("components", p_components), ("P_min", p_min), ("tilde P_min", tilde_p_min)):
    print(f"{name:12s}", [members(b) for b in split(G, A).blocks])

# P_min drops the lightest edge of the whole coalition (weight 1), so 4-5
# survives; tilde P_min drops the lightest edge of each component, so 4-5
# goes too.

# %%
# A unanimity game on {0, 1} is worth 1 to any block that contains both.
u = UnanimityGame(6, 0b000011)
bar = restricted_game(G, "pmin", u)
hat = restricted_game(G, "tpmin", u)
for S in (0b000011, 0b000111, 0b001111):
    print(members(S), "bar", bar(S), "hat", hat(S))

# {0,1} on its own has one edge, which is its own minimum, so it falls apart.
# {0,1,2} loses 1-2 instead and keeps {0,1} together.
# The restricted values live in a plain table indexed by coalition mask.
print(len(hat.values), "table entries")
