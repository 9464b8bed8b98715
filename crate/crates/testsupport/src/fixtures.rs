//! The two worked presentations used across the suites, in the canonical
//! file syntax so the parsers are on the tested path.

/// Three idempotent loop generators with braid-type corrections; the
/// completed basis presents a 24-dimensional algebra.
pub const HECKE: &str = "\
objects B
arrows
  e1 : B -> B
  e2 : B -> B
  e3 : B -> B
order deglex e1 < e2 < e3
relations
  e1*e1 - e1
  e2*e2 - e2
  e3*e3 - e3
  e3*e1 - e1*e3
  e2*e1*e2 - e1*e2*e1 + 2/9 e2 - 2/9 e1
  e3*e2*e3 - e2*e3*e2 + 2/9 e3 - 2/9 e2
";

/// The same presentation with a one-object acting graph and no acting
/// arrows: the induced action is the algebra itself, tagged.
pub const HECKE_TRIVIAL_GAMMA: &str = "\
objects B
arrows
  e1 : B -> B
  e2 : B -> B
  e3 : B -> B
order deglex e1 < e2 < e3
relations
  e1*e1 - e1
  e2*e2 - e2
  e3*e3 - e3
  e3*e1 - e1*e3
  e2*e1*e2 - e1*e2*e1 + 2/9 e2 - 2/9 e1
  e3*e2*e3 - e2*e3*e2 + 2/9 e3 - 2/9 e2
gamma
  object A
fmap
  A -> B
";

/// The extension with one acting arrow whose image is e2*e1: computes the
/// right congruence generated by e2*e1 ~ 1.
pub const HECKE_Q: &str = "\
objects B
arrows
  e1 : B -> B
  e2 : B -> B
  e3 : B -> B
order deglex e1 < e2 < e3
relations
  e1*e1 - e1
  e2*e2 - e2
  e3*e3 - e3
  e3*e1 - e1*e3
  e2*e1*e2 - e1*e2*e1 + 2/9 e2 - 2/9 e1
  e3*e2*e3 - e2*e3*e2 + 2/9 e3 - 2/9 e2
gamma
  object A
  arrow q : A -> A
fmap
  A -> B
  q -> e2*e1
";

/// Five-object quiver category with five relations.
pub const FIVE_OBJECTS: &str = "\
objects B1 B2 B3 B4 B5
arrows
  a : B1 -> B2
  b : B2 -> B2
  c : B2 -> B3
  d : B1 -> B3
  e : B1 -> B5
  f : B5 -> B4
  g : B4 -> B3
  h : B1 -> B4
  j : B5 -> B3
order deglex a < b < c < d < e < f < g < h < j
relations
  a*b*b*b - a*b*b - a*b + a
  b*b*b*c - b*b*c - b*c + c
  a*b*c + d - e*f*g
  a*c + d - h*g
  f*g - j
";

/// A presentation whose completion generates an unbounded rule family
/// (x*x collapses onto x*y and the overlap cascade never closes).
pub const DIVERGENT: &str = "\
objects B
arrows
  y : B -> B
  x : B -> B
order deglex y < x
relations
  x*x - x*y
";
