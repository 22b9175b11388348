//! Permutations of `{0, .., m-1}` and their cycle structure.
//!
//! Everything else in the crate is built on this module: vertex, hyperedge
//! and face rotations of a hypermap are all plain [`Permutation`]s. Points
//! are 0-based internally; the text format accepts a base offset so 1-based
//! input can be read and printed unchanged.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("point count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("a permutation needs at least one point")]
    Empty,
    #[error("map is not a bijection: value {value} out of range or repeated")]
    NotBijective { value: usize },
    #[error("point {point} out of range for {m} points")]
    OutOfRange { point: usize, m: usize },
    #[error("point {point} listed twice")]
    Duplicate { point: usize },
    #[error("cannot remove a point from a 1-point permutation")]
    RemoveFromSingleton,
}

/// Errors from the text cycle-notation parser.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected '(' but found {found:?}")]
    ExpectedOpen { found: char },
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("invalid integer {text:?}")]
    BadInteger { text: String },
    #[error("point {point} is below the index base {base}")]
    BelowBase { point: usize, base: usize },
    #[error("no points given and no point count to fall back on")]
    EmptyInput,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A bijection on the points `{0, .., m-1}`, stored as its image map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Identity on `m` points.
    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "a permutation needs at least one point");
        Permutation {
            map: (0..m).collect(),
        }
    }

    /// The standard circular permutation `(0, 1, .., m-1)`, `x -> x+1 mod m`.
    pub fn standard_circular(m: usize) -> Self {
        assert!(m >= 1, "a permutation needs at least one point");
        Permutation {
            map: (0..m).map(|x| (x + 1) % m).collect(),
        }
    }

    /// Builds from an image map (`map[x]` is the image of `x`), checking
    /// that it is a bijection.
    pub fn from_map(map: Vec<usize>) -> Result<Self, PermError> {
        if map.is_empty() {
            return Err(PermError::Empty);
        }
        let m = map.len();
        let mut seen = vec![false; m];
        for &v in &map {
            if v >= m || seen[v] {
                return Err(PermError::NotBijective { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds from disjoint cycles; points of `{0, .., m-1}` not listed
    /// become fixed points.
    pub fn from_cycles(cycles: &[Vec<usize>], m: usize) -> Result<Self, PermError> {
        if m == 0 {
            return Err(PermError::Empty);
        }
        let mut map: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= m {
                    return Err(PermError::OutOfRange { point: p, m });
                }
                if seen[p] {
                    return Err(PermError::Duplicate { point: p });
                }
                seen[p] = true;
                map[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { map })
    }

    /// Builds the circular permutation whose cycle, read forward, is `cycle`.
    ///
    /// `cycle` must list every point of `{0, .., cycle.len()-1}` exactly once.
    pub fn from_circular_word(cycle: &[usize]) -> Result<Self, PermError> {
        Self::from_cycles(&[cycle.to_vec()], cycle.len())
    }

    /// Number of points.
    pub fn point_count(&self) -> usize {
        self.map.len()
    }

    /// Image of `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// The image map as a slice.
    pub fn as_map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Composition `self . q`, applying `q` first: `result(x) = self(q(x))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.map.len() != q.map.len() {
            return Err(PermError::SizeMismatch {
                left: self.map.len(),
                right: q.map.len(),
            });
        }
        Ok(Permutation {
            map: q.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { map: inv }
    }

    /// Canonical cycle decomposition.
    pub fn cycles(&self) -> CycleDecomposition {
        let m = self.map.len();
        let mut seen = vec![false; m];
        let mut cycles = Vec::new();
        // Scanning leaders in increasing order already yields the canonical
        // form: each cycle starts at its minimum and cycles are sorted.
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// Number of cycles, without materializing the decomposition.
    pub fn cycle_count(&self) -> usize {
        let m = self.map.len();
        let mut seen = vec![false; m];
        let mut z = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            z += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
            }
        }
        z
    }

    /// True iff the permutation has exactly one cycle.
    pub fn is_circular(&self) -> bool {
        // Walk from 0; circular iff the first return takes m steps.
        let m = self.map.len();
        let mut x = self.map[0];
        let mut steps = 1;
        while x != 0 {
            x = self.map[x];
            steps += 1;
        }
        steps == m
    }

    /// The fixed points, in increasing order.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .map(|(x, _)| x)
            .collect()
    }

    /// Sign of the permutation: `+1` for even, `-1` for odd.
    pub fn parity(&self) -> i8 {
        let m = self.map.len();
        // parity of m - z
        if (m - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Removes point `i`, splicing it out of its cycle and relabeling the
    /// surviving points to `{0, .., m-2}` in order.
    ///
    /// The preimage of `i` is sent to the image of `i`; every other
    /// transition is preserved.
    pub fn remove_point(&self, i: usize) -> Result<Permutation, PermError> {
        let m = self.map.len();
        if m < 2 {
            return Err(PermError::RemoveFromSingleton);
        }
        if i >= m {
            return Err(PermError::OutOfRange { point: i, m });
        }
        let relabel = |x: usize| if x > i { x - 1 } else { x };
        let mut map = vec![0; m - 1];
        for x in 0..m {
            if x == i {
                continue;
            }
            let y = if self.map[x] == i {
                self.map[i]
            } else {
                self.map[x]
            };
            map[relabel(x)] = relabel(y);
        }
        Ok(Permutation { map })
    }

    /// Inserts a fresh point labeled `m` into the cycle right after `after`,
    /// shifting nothing: old labels keep their meaning.
    pub fn insert_point_after(&self, after: usize) -> Result<Permutation, PermError> {
        let m = self.map.len();
        if after >= m {
            return Err(PermError::OutOfRange { point: after, m });
        }
        let mut map = self.map.clone();
        map.push(map[after]);
        map[after] = m;
        Ok(Permutation { map })
    }

    /// Renders in cycle notation with the given index base, singleton
    /// cycles included.
    pub fn to_cycle_string(&self, base: usize) -> String {
        self.cycles().to_string_with_base(base)
    }

    /// Parses cycle notation such as `"(1 5 3 0 4)(7 6 2)"`.
    ///
    /// Separators may be whitespace or commas. When `m` is given, unlisted
    /// points become fixed points; otherwise the point count is one more
    /// than the largest listed point (after subtracting `base`).
    pub fn parse_cycles(text: &str, m: Option<usize>, base: usize) -> Result<Self, ParseError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => return Err(ParseError::ExpectedOpen { found: c }),
            }
            let mut cycle = Vec::new();
            let mut token = String::new();
            loop {
                match chars.next() {
                    None => return Err(ParseError::Unbalanced),
                    Some(')') => {
                        if !token.is_empty() {
                            cycle.push(parse_point(&token, base)?);
                            token.clear();
                        }
                        break;
                    }
                    Some(c) if c.is_whitespace() || c == ',' => {
                        if !token.is_empty() {
                            cycle.push(parse_point(&token, base)?);
                            token.clear();
                        }
                    }
                    Some(c) => token.push(c),
                }
            }
            cycles.push(cycle);
        }
        let listed_max = cycles.iter().flatten().max().copied();
        let m = match (m, listed_max) {
            (Some(m), _) => m,
            (None, Some(max)) => max + 1,
            (None, None) => return Err(ParseError::EmptyInput),
        };
        Ok(Permutation::from_cycles(&cycles, m)?)
    }
}

fn parse_point(token: &str, base: usize) -> Result<usize, ParseError> {
    let raw: usize = token.parse().map_err(|_| ParseError::BadInteger {
        text: token.to_string(),
    })?;
    if raw < base {
        return Err(ParseError::BelowBase { point: raw, base });
    }
    Ok(raw - base)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(0))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Permutation[{}] {}",
            self.map.len(),
            self.to_cycle_string(0)
        )
    }
}

/// A cycle decomposition in canonical form: each cycle rotated so its
/// minimum comes first, cycles sorted by their first element. Canonical
/// form makes equality a plain structural comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of cycles.
    pub fn z(&self) -> usize {
        self.cycles.len()
    }

    pub fn to_string_with_base(&self, base: usize) -> String {
        let mut out = String::new();
        for cycle in &self.cycles {
            out.push('(');
            for (i, &p) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&(p + base).to_string());
            }
            out.push(')');
        }
        out
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with_base(0))
    }
}
