"""Walk through the two worked three-node scenarios, round by round.

Three nodes sit in a line: the middle one hears both ends, the ends
cannot hear each other. Six subcarriers, the canonical mapping
(sender pair i, receiver pair i+3).

Scenario 1 is the classic hidden-terminal setup: both ends want to talk
to the middle node at the same time. Watch how the middle node's grant
names exactly one winner, and how the loser deduces from the grant's
upper-half subcarrier that it must stay silent.

Scenario 2 has the left end and the middle holding packets for each
other: the handshake clears both directions at once, and the exchange
runs full duplex.
"""

from rcfd.scenarios import replay, trace_lines

for number in (1, 2):
    for line in trace_lines(number):
        print(line)
    print()

# The same replay is available programmatically, with every node's
# perceived sets and role:
result = replay(1)
loser = result.states[3]
print("what the losing end saw in the grant round:")
print("  lower half:", sorted(e.sc for e in loser.r3_perceived_s1))
print("  upper half:", sorted(e.sc for e in loser.r3_perceived_s2))
print("its own receiver pair is subcarrier 6 — the grant named 4, so it backs off.")
