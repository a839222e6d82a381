"""Canonical example programs, one per interaction form.

The same sources live as files under corpus/ at the repository root; a test
keeps the two in sync.
"""

EMPLOYEE = (
    "proc main() =\n"
    "    kchoose(emp = tom; age = 31,\n"
    "            emp = kim; age = 40,\n"
    "            emp = sue; age = 22).\n"
)

TUITION = (
    "proc main() =\n"
    "    kchoose(major = english; tuition = 2000,\n"
    "            major = medical; tuition = 4000,\n"
    "            major = libarts; tuition = 2200);\n"
    "    print(tuition).\n"
)

DOUBLE = (
    "// reads a number and doubles it through a procedure call\n"
    "proc double(x) = result = x + x.\n"
    "\n"
    "proc main() = true; read(n); double(n); print(result).\n"
)

CONFIRM = (
    "// labeled buttons instead of numbered branches\n"
    'proc main() = mchoose("OK": status = accepted, "Cancel": status = declined); print(status).\n'
)

SAMPLES = [
    ("employee", EMPLOYEE),
    ("tuition", TUITION),
    ("double", DOUBLE),
    ("confirm", CONFIRM),
]
