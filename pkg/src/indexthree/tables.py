"""Printed rotation tables and logs, kept verbatim as text."""

K17_MINUS_K2 = """\
0. 1 a 8 5 9 4 13 12 14 b 7 10 6 11 2 3
1. 0 3 7 5 14 10 12 6 13 8 11 4 9 b 2 a
2. 3 0 11 13 4 8 6 12 5 10 7 14 9 a 1 b
3. 4 a 11 8 12 7 1 0 2 b 10 13 9 14 5 6
4. 3 6 10 8 2 13 0 9 1 11 14 7 12 b 5 a
5. 6 3 14 1 7 11 9 0 8 13 10 2 12 a 4 b
6. 7 a 14 11 0 10 4 3 5 b 13 1 12 2 8 9
7. 6 9 13 11 5 1 3 12 4 14 2 10 0 b 8 a
8. 9 6 2 4 10 14 12 3 11 1 13 5 0 a 7 b
9. 10 a 2 14 3 13 7 6 8 b 1 4 0 5 11 12
10. 9 12 1 14 8 4 6 0 7 2 5 13 3 b 11 a
11. 12 9 5 7 13 2 0 6 14 4 1 8 3 a 10 b
12. 13 a 5 2 6 1 10 9 11 b 4 7 3 8 14 0
13. 12 0 4 2 11 7 9 3 10 5 8 1 6 b 14 a
14. 0 12 8 10 1 5 3 9 2 7 4 11 6 a 13 b
a. 0 1 2 9 10 11 3 4 5 12 13 14 6 7 8
b. 0 14 13 6 5 4 12 11 10 3 2 1 9 8 7
"""

# circuit logs of the current graph generating K17_MINUS_K2
C5_S1_LOGS = """\
0. 1 a 8 5 9 4 13 12 14 b 7 10 6 11 2 3
1. 14 2 6 4 13 9 11 5 12 7 10 3 8 b 1 a
2. 1 13 9 11 2 6 4 10 3 8 5 12 7 a 14 b
"""

K8_Q0_Q1 = """\
0. 2 7 3 1 4 5 6 q0
2. 4 1 5 3 6 7 0 q0
4. 6 3 7 5 0 1 2 q0
6. 0 5 1 7 2 3 4 q0
1. 7 6 5 2 4 0 3 q1
3. 1 0 7 4 6 2 5 q1
5. 3 2 1 6 0 4 7 q1
7. 5 4 3 0 2 6 1 q1
q0. 6 4 2 0
q1. 1 3 5 7
"""

K11_MINUS_C4 = """\
0. 1 10 8 4 2 9 7 5 3 6
1. 0 6 4 8 5 9 3 7 2 10
2. 0 4 10 1 7 6 5 8 3 9
3. 0 5 10 4 7 1 9 2 8 6
4. 0 8 1 6 9 5 7 3 10 2
5. 0 7 4 9 1 8 2 6 10 3
6. 0 3 8 10 5 2 7 9 4 1
7. 0 9 6 2 1 3 4 5
8. 0 10 6 3 2 5 1 4
9. 0 2 3 1 5 4 6 7
10. 0 1 2 4 3 5 6 8
"""


# circuit logs over Z_18 generating a triangular K23 - K5
C11_S1_LOGS = """\
0. 1 17 7 4 3 12 2 d 10 c 11 14 13 e 5 b 16 a 8 6 9 15
1. 1 6 15 11 10 16 17 14 3 9 12 13 a 2 b 4 c 8 d 7 e 5
2. 1 2 12 9 3 7 c 14 b 13 e 11 d 16 10 a 5 17 4 15 6 8
"""

# circuit logs over Z_30 generating a triangular K35 - K5
C11_S2_LOGS = """\
0. 1 a 2 22 4 e 29 d 7 8 18 11 10 14 21 15 6 19 16 3 28 c 26 b 25 27 13 24 9 23 12 20 5 17
1. 1 23 d 25 c 2 5 b 22 a 29 16 e 26 18 21 6 19 13 24 15 9 27 11 17 14 3 12 8 10 7 28 4 20
2. 1 e 14 13 18 21 23 3 12 25 15 10 22 29 19 7 16 26 24 11 17 6 2 9 27 20 28 a 8 b 4 c 5 d
"""

# circuit logs over Z_18 generating a triangular K21 - K3
C9_S1_LOGS = """\
0. 1 3 9 12 2 17 a 7 b 5 10 13 c 14 8 6 15 16 4 11
1. 1 b 11 a 7 14 12 3 8 13 4 c 5 15 9 6 2 17 10 16
2. 1 3 2 12 4 c 14 9 5 13 b 17 15 16 10 6 8 7 11 a
"""

# C11 logs, one search-found solution per s; each carries an arithmetic 3-ladder
C11_LOGS = {
    3: """\
0. 1 b 8 18 10 31 21 29 11 a 16 f 26 3 35 g 7 d 20 32 36 23 c 4 34 9 14 12 37 15 17 e 19 6 28 h 38 5 30 25 27 2 24 22 33 13
1. 1 33 30 35 c 4 d 32 g 19 h 11 17 2 14 5 9 3 15 28 22 31 21 29 8 18 10 13 24 27 26 20 e 34 f 23 a 25 b 38 12 36 6 7 37 16
2. 1 h 20 g 4 7 27 3 29 8 30 32 38 15 12 19 d 35 c 16 13 f 5 e 22 37 25 34 33 11 26 36 24 23 21 10 31 b 14 a 28 18 2 9 17 6
""",
    4: """\
0. 1 d 29 6 26 g 22 18 46 f 47 15 19 12 44 9 16 37 24 38 11 21 10 43 31 h 50 a 28 33 4 36 32 39 7 42 35 14 27 13 40 30 41 8 17 5 c 25 b 2 e 34 49 48 20 45 23 3
1. 1 7 49 48 39 8 18 10 43 33 41 11 24 13 40 27 38 14 30 16 37 21 35 44 32 47 29 g 25 h 20 12 9 45 22 19 34 28 6 15 17 e 46 f 5 23 a 31 b 26 c 4 d 50 2 36 42 3
2. 1 h 26 g 25 31 28 22 d 47 c 46 12 15 32 3 39 34 42 44 45 17 36 48 29 23 6 50 2 9 43 33 41 8 18 10 40 27 38 11 24 13 37 21 35 14 30 16 7 19 4 f 5 e 49 b 20 a
""",
    5: """\
0. 1 d 2 e 31 b 38 45 53 11 24 13 52 39 50 14 30 16 49 33 47 17 36 19 46 27 44 20 42 22 43 21 41 23 a 55 37 28 40 25 59 51 3 35 9 15 12 8 18 56 5 6 54 26 34 h 32 60 48 57 62 c 61 7 58 10 4 f 29 g
1. 1 57 53 48 23 51 56 54 26 18 10 52 39 50 11 24 13 49 33 47 14 30 16 46 27 44 17 36 19 43 21 41 20 42 22 40 34 38 15 5 12 35 9 2 c 4 d 62 g 31 h 29 55 45 8 a 37 b 32 e 58 f 59 6 7 61 60 25 28 3
2. 1 58 51 48 57 23 45 22 43 24 44 17 33 16 49 36 50 11 21 10 55 4 29 6 54 56 62 2 9 15 3 38 35 60 12 7 25 b 26 a 40 18 41 20 39 19 46 30 47 14 27 13 52 42 53 8 37 28 31 h 32 g 34 f 5 e 61 d 59 c
""",
}


def parse_table(text):
    """Parse ``label. entries...`` lines into an ordered dict of lists."""
    rows = {}
    for ln in text.strip().splitlines():
        label, _, rest = ln.partition(".")
        label = label.strip()
        key = int(label) if label.isdigit() else label
        rows[key] = [int(t) if t.lstrip("-").isdigit() else t for t in rest.split()]
    return rows
