//! The named lattices and the constructions that build new lattices from old.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_limit, Error, Result};
use crate::{Budget, Element, FiniteLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    /// Subsets of an n-set.
    Boolean(usize),
    /// Bottom, top and n pairwise incomparable elements in between.
    M(usize),
    /// `0 < a < b < 1`, `0 < c < 1`.
    Pentagon,
    /// `0 < a < b < 1`, `0 < c < d < 1`.
    Hexagon,
    Chain(usize),
}

impl StandardKind {
    /// `M(1)` and `M(2)` are distributive and only accepted for completeness.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, StandardKind::M(n) if *n < 3)
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardKind::Boolean(n) => write!(f, "boolean({n})"),
            StandardKind::M(n) => write!(f, "m({n})"),
            StandardKind::Pentagon => f.write_str("pentagon"),
            StandardKind::Hexagon => f.write_str("hexagon"),
            StandardKind::Chain(k) => write!(f, "chain({k})"),
        }
    }
}

impl FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "pentagon" | "n5" => return Ok(StandardKind::Pentagon),
            "hexagon" | "h" => return Ok(StandardKind::Hexagon),
            _ => {}
        }
        let parse = |prefix: &str| -> Option<usize> {
            let rest = s.strip_prefix(prefix)?;
            let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            rest.trim().parse().ok()
        };
        if let Some(n) = parse("boolean").or_else(|| parse("b")) {
            return Ok(StandardKind::Boolean(n));
        }
        if let Some(n) = parse("chain") {
            return Ok(StandardKind::Chain(n));
        }
        if let Some(n) = parse("m") {
            return Ok(StandardKind::M(n));
        }
        Err(Error::InvalidParameter(format!("unknown lattice kind `{s}`")))
    }
}

fn letter(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("x{i}")
    }
}

pub fn standard_lattice(kind: StandardKind) -> Result<FiniteLattice> {
    standard_lattice_with(kind, &Budget::default())
}

pub fn standard_lattice_with(kind: StandardKind, budget: &Budget) -> Result<FiniteLattice> {
    match kind {
        StandardKind::Boolean(n) => boolean(n, budget),
        StandardKind::M(n) => {
            if n == 0 {
                return Err(Error::InvalidParameter("m(n) needs n >= 1".into()));
            }
            check_limit("elements", n + 2, budget.max_elements)?;
            let top = n + 1;
            let pairs: Vec<_> = (1..=n).flat_map(|i| [(0, i), (i, top)]).collect();
            let labels = std::iter::once("0".to_string())
                .chain((0..n).map(letter))
                .chain(std::iter::once("1".to_string()));
            FiniteLattice::from_leq_pairs(n + 2, &pairs)?.with_labels(labels)
        }
        StandardKind::Pentagon => FiniteLattice::from_leq_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])?
            .with_labels(["0", "a", "b", "c", "1"]),
        StandardKind::Hexagon => FiniteLattice::from_leq_pairs(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)])?
            .with_labels(["0", "a", "b", "c", "d", "1"]),
        StandardKind::Chain(k) => {
            if k == 0 {
                return Err(Error::InvalidParameter("chain(k) needs k >= 1".into()));
            }
            check_limit("elements", k, budget.max_elements)?;
            let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
            FiniteLattice::from_leq_pairs(k, &pairs)?.with_labels((0..k).map(|i| i.to_string()))
        }
    }
}

pub fn chain(k: usize) -> FiniteLattice {
    standard_lattice(StandardKind::Chain(k)).expect("chain(k) needs k >= 1")
}

pub fn boolean_lattice(n: usize) -> FiniteLattice {
    standard_lattice(StandardKind::Boolean(n)).expect("boolean(n) needs n >= 1")
}

pub fn m_lattice(n: usize) -> FiniteLattice {
    standard_lattice(StandardKind::M(n)).expect("m(n) needs n >= 1")
}

pub fn pentagon() -> FiniteLattice {
    standard_lattice(StandardKind::Pentagon).expect("static lattice")
}

pub fn hexagon() -> FiniteLattice {
    standard_lattice(StandardKind::Hexagon).expect("static lattice")
}

pub fn one_element() -> FiniteLattice {
    chain(1)
}

/// Subset lattice; element `x` is the subset whose characteristic bitmask is `x`.
fn boolean(n: usize, budget: &Budget) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::InvalidParameter("boolean(n) needs n >= 1".into()));
    }
    if n >= usize::BITS as usize - 1 {
        return Err(Error::SizeLimit {
            dimension: "elements",
            requested: usize::MAX,
            limit: budget.max_elements,
        });
    }
    let size = 1usize << n;
    check_limit("elements", size, budget.max_elements)?;
    let mut leq = vec![false; size * size];
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            leq[x * size + y] = x & !y == 0;
            meet[x * size + y] = x & y;
            join[x * size + y] = x | y;
        }
    }
    let full = size - 1;
    let labels = (0..size).map(|x| match x {
        0 => "0".to_string(),
        x if x == full => "1".to_string(),
        x => (0..n).filter(|i| x >> i & 1 == 1).map(letter).collect(),
    });
    FiniteLattice::from_parts(size, leq, meet, join).with_labels(labels)
}

/// Order reversed, meet and join swapped, labels kept.
pub fn dual(lattice: &FiniteLattice) -> FiniteLattice {
    let n = lattice.size();
    let mut leq = vec![false; n * n];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = lattice.leq(y, x);
            meet[x * n + y] = lattice.join(x, y);
            join[x * n + y] = lattice.meet(x, y);
        }
    }
    let out = FiniteLattice::from_parts(n, leq, meet, join);
    match lattice.labels() {
        Some(l) => out.with_labels(l.to_vec()).expect("same size"),
        None => out,
    }
}

/// Componentwise order; element `(i, j)` has index `i * |right| + j`.
pub fn product(left: &FiniteLattice, right: &FiniteLattice, budget: &Budget) -> Result<FiniteLattice> {
    let (n1, n2) = (left.size(), right.size());
    let size = n1.checked_mul(n2).unwrap_or(usize::MAX);
    check_limit("elements", size, budget.max_elements)?;
    let split = |x: usize| (x / n2, x % n2);
    let mut leq = vec![false; size * size];
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for x in 0..size {
        let (x1, x2) = split(x);
        for y in 0..size {
            let (y1, y2) = split(y);
            leq[x * size + y] = left.leq(x1, y1) && right.leq(x2, y2);
            meet[x * size + y] = left.meet(x1, y1) * n2 + right.meet(x2, y2);
            join[x * size + y] = left.join(x1, y1) * n2 + right.join(x2, y2);
        }
    }
    let labels = (0..size).map(|x| {
        let (x1, x2) = split(x);
        format!("({},{})", left.label(x1), right.label(x2))
    });
    FiniteLattice::from_parts(size, leq, meet, join).with_labels(labels)
}

/// The `a`-doubling extension: the sublattice `{(r, i) : i = 0 or r >= a}`
/// of `L x 2`. Elements `(r, 0)` keep index `r`; the `(r, 1)` follow in
/// index order of `r`.
pub fn doubling_extension(lattice: &FiniteLattice, a: Element) -> Result<FiniteLattice> {
    lattice.check_element(a)?;
    let mut points: Vec<(Element, u8)> = lattice.elements().map(|r| (r, 0)).collect();
    points.extend(lattice.elements().filter(|&r| lattice.leq(a, r)).map(|r| (r, 1)));
    let size = points.len();
    let index = |p: (Element, u8)| points.iter().position(|&q| q == p).expect("closed under meet/join");
    let mut leq = vec![false; size * size];
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for (x, &(r, i)) in points.iter().enumerate() {
        for (y, &(s, j)) in points.iter().enumerate() {
            leq[x * size + y] = lattice.leq(r, s) && i <= j;
            meet[x * size + y] = index((lattice.meet(r, s), i.min(j)));
            join[x * size + y] = index((lattice.join(r, s), i.max(j)));
        }
    }
    let labels = points.iter().map(|&(r, i)| format!("({},{})", lattice.label(r), i));
    FiniteLattice::from_parts(size, leq, meet, join).with_labels(labels)
}

/// Appends a new bottom below the old one. The new bottom gets index 0 and
/// every old element shifts up by one.
pub fn two_oplus(lattice: &FiniteLattice) -> FiniteLattice {
    let n = lattice.size() + 1;
    let mut leq = vec![false; n * n];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (v, m, j) = match (x, y) {
                (0, _) => (true, 0, y),
                (_, 0) => (false, 0, x),
                _ => (
                    lattice.leq(x - 1, y - 1),
                    lattice.meet(x - 1, y - 1) + 1,
                    lattice.join(x - 1, y - 1) + 1,
                ),
            };
            leq[x * n + y] = v;
            meet[x * n + y] = m;
            join[x * n + y] = j;
        }
    }
    let labels = std::iter::once("bot".to_string()).chain(lattice.elements().map(|x| lattice.label(x)));
    FiniteLattice::from_parts(n, leq, meet, join)
        .with_labels(labels)
        .expect("sizes match")
}

/// The lattice induced on a subset closed under meet and join, with elements
/// renumbered in the order given.
pub fn induced_sublattice(lattice: &FiniteLattice, elements: &[Element]) -> Result<FiniteLattice> {
    if elements.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut index = vec![usize::MAX; lattice.size()];
    for (i, &e) in elements.iter().enumerate() {
        lattice.check_element(e)?;
        index[e] = i;
    }
    let n = elements.len();
    let mut leq = vec![false; n * n];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for (i, &x) in elements.iter().enumerate() {
        for (j, &y) in elements.iter().enumerate() {
            let (m, jn) = (index[lattice.meet(x, y)], index[lattice.join(x, y)]);
            if m == usize::MAX || jn == usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "subset not closed under meet/join at ({x},{y})"
                )));
            }
            leq[i * n + j] = lattice.leq(x, y);
            meet[i * n + j] = m;
            join[i * n + j] = jn;
        }
    }
    let labels = elements.iter().map(|&e| lattice.label(e));
    FiniteLattice::from_parts(n, leq, meet, join).with_labels(labels)
}

/// `{x : x <= a}` with the induced order, elements in index order.
pub fn principal_ideal(lattice: &FiniteLattice, a: Element) -> Result<FiniteLattice> {
    lattice.check_element(a)?;
    let below: Vec<Element> = lattice.elements().filter(|&x| lattice.leq(x, a)).collect();
    induced_sublattice(lattice, &below)
}
