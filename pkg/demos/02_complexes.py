"""Sofic shifts and simplicial complexes translate into each other.

A union of three overlapping full shifts extracts to the hollow triangle;
conversely any abstract complex embeds into a positive-entropy mixing shift
as a family of concatenation subshifts, one per face.
"""

from shiftgeo import (Alphabet, BINARY, ShiftPresentation, full_shift,
                      language, parse_config)
from shiftgeo.homotopy import (AbstractComplex, complex_coordinates,
                               embed_complex, extract_complex)

A012 = Alphabet("012")
triangle = ShiftPresentation(
    A012, ["a", "b", "c"],
    [("a", "a", "0"), ("a", "a", "1"),      # the {0,1} component
     ("b", "b", "1"), ("b", "b", "2"),      # the {1,2} component
     ("c", "c", "2"), ("c", "c", "0")])     # the {2,0} component

ext = extract_complex(triangle)
K = ext.complex
print("extraction of the three-component union")
print("  vertices:", list(K.vertices))
print("  edges:   ", [sorted(f) for f in K.faces_of_size(2)])
print("  2-faces: ", [sorted(f) for f in K.faces_of_size(3)] or "none "
      "(the triple intersection is empty, so the triangle is hollow)")

for literal in ("inf(1).inf(1)", "inf(01).inf(01)"):
    x = parse_config(literal, A012)
    pt = complex_coordinates(x, ext)
    print(f"  coordinates of {literal}: "
          + ", ".join(f"{v}={w}" for v, w in pt.weights))

print("\nembedding an edge into the binary full shift")
K2 = AbstractComplex.make(["p", "q"], [["p", "q"]])
emb = embed_complex(K2, full_shift(BINARY))
print("  marker word:", emb.marker, " filler:", emb.filler,
      " vertex words:", emb.vertex_words)
for face in sorted(emb.face_shifts, key=lambda f: (len(f), sorted(f))):
    Y = emb.face_shifts[face]
    print(f"  face {sorted(face)}: {len(Y.states)} states, "
          f"{len(language(Y, 6))} factors of length 6")
