//! The five three- and four-node motifs the graphs are grown from.
//!
//! Motif nodes are indexed from zero in the letter order `a, b, c, d`.

use core::fmt;
use core::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MotifId {
    /// Triangle.
    M1,
    /// Triangle `a, b, c` with a pendant node `d` attached to `c`.
    M2,
    /// Square `a-b-c-d`.
    M3,
    /// Square `a-b-c-d` with the diagonal `a-c`.
    M4,
    /// Complete graph on four nodes.
    M5,
}

impl MotifId {
    pub const ALL: [MotifId; 5] = [MotifId::M1, MotifId::M2, MotifId::M3, MotifId::M4, MotifId::M5];

    pub fn spec(self) -> &'static MotifSpec {
        match self {
            MotifId::M1 => &M1,
            MotifId::M2 => &M2,
            MotifId::M3 => &M3,
            MotifId::M4 => &M4,
            MotifId::M5 => &M5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MotifId::M1 => "m1",
            MotifId::M2 => "m2",
            MotifId::M3 => "m3",
            MotifId::M4 => "m4",
            MotifId::M5 => "m5",
        }
    }
}

impl fmt::Display for MotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseMotifError;

impl fmt::Display for ParseMotifError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected one of m1, m2, m3, m4, m5")
    }
}

impl FromStr for MotifId {
    type Err = ParseMotifError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "m1" | "M1" => Ok(MotifId::M1),
            "m2" | "M2" => Ok(MotifId::M2),
            "m3" | "M3" => Ok(MotifId::M3),
            "m4" | "M4" => Ok(MotifId::M4),
            "m5" | "M5" => Ok(MotifId::M5),
            _ => Err(ParseMotifError),
        }
    }
}

/// Immutable description of a motif: its nodes, bonds and node degrees.
#[derive(Debug, PartialEq, Eq)]
pub struct MotifSpec {
    id: MotifId,
    edges: &'static [(u8, u8)],
    base_degrees: &'static [u32],
}

static M1: MotifSpec = MotifSpec { id: MotifId::M1, edges: &[(0, 1), (0, 2), (1, 2)], base_degrees: &[2, 2, 2] };
static M2: MotifSpec =
    MotifSpec { id: MotifId::M2, edges: &[(0, 1), (0, 2), (1, 2), (2, 3)], base_degrees: &[2, 2, 3, 1] };
static M3: MotifSpec =
    MotifSpec { id: MotifId::M3, edges: &[(0, 1), (1, 2), (2, 3), (0, 3)], base_degrees: &[2, 2, 2, 2] };
static M4: MotifSpec =
    MotifSpec { id: MotifId::M4, edges: &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], base_degrees: &[3, 2, 3, 2] };
static M5: MotifSpec = MotifSpec {
    id: MotifId::M5,
    edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    base_degrees: &[3, 3, 3, 3],
};

pub fn get_motif(id: MotifId) -> &'static MotifSpec {
    id.spec()
}

impl MotifSpec {
    pub fn id(&self) -> MotifId {
        self.id
    }

    /// Number of nodes.
    pub fn q(&self) -> usize {
        self.base_degrees.len()
    }

    /// Number of bonds.
    pub fn r(&self) -> usize {
        self.edges.len()
    }

    /// Bonds as pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> &'static [(u8, u8)] {
        self.edges
    }

    pub fn base_degrees(&self) -> &'static [u32] {
        self.base_degrees
    }

    pub fn base_degree(&self, node: u8) -> u32 {
        self.base_degrees[usize::from(node)]
    }

    pub fn is_regular(&self) -> bool {
        self.base_degrees.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_complete(&self) -> bool {
        let q = self.q();
        self.r() == q * (q - 1) / 2
    }

    /// Letter used for a motif node in figures and listings.
    pub fn label(node: u8) -> char {
        char::from(b'a' + node)
    }
}
