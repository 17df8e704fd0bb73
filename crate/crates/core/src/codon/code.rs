use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::body::{BodyOfEvidence, FocalElement, Regime};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::numeric::Mass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nucleotide {
    A,
    C,
    G,
    U,
}

impl Nucleotide {
    pub const ALL: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::U];

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'A' => Ok(Nucleotide::A),
            'C' => Ok(Nucleotide::C),
            'G' => Ok(Nucleotide::G),
            'U' => Ok(Nucleotide::U),
            _ => Err(Error::InvalidNucleotide(c.to_string())),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::U => 'U',
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codon(pub [Nucleotide; 3]);

impl Codon {
    /// All 64 codons in A, C, G, U order.
    pub fn all() -> impl Iterator<Item = Codon> {
        Nucleotide::ALL.into_iter().flat_map(|a| {
            Nucleotide::ALL
                .into_iter()
                .flat_map(move |b| Nucleotide::ALL.into_iter().map(move |c| Codon([a, b, c])))
        })
    }

    pub fn nucleotide(&self, position: u8) -> Nucleotide {
        self.0[usize::from(position - 1)]
    }
}

impl FromStr for Codon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 3 {
            return Err(Error::InvalidNucleotide(s.to_string()));
        }
        Ok(Codon([
            Nucleotide::from_char(chars[0])?,
            Nucleotide::from_char(chars[1])?,
            Nucleotide::from_char(chars[2])?,
        ]))
    }
}

impl fmt::Display for Codon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.0 {
            write!(f, "{}", n.as_char())?;
        }
        Ok(())
    }
}

/// One entry of the evidence table: a nucleotide at a codon position (1..=3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub position: u8,
    pub nucleotide: Nucleotide,
}

impl Cell {
    pub fn new(position: u8, nucleotide: Nucleotide) -> Result<Self> {
        if !(1..=3).contains(&position) {
            return Err(Error::InvalidPosition(position.to_string()));
        }
        Ok(Cell { position, nucleotide })
    }

    pub fn all() -> impl Iterator<Item = Cell> {
        (1..=3u8).flat_map(|position| {
            Nucleotide::ALL
                .into_iter()
                .map(move |nucleotide| Cell { position, nucleotide })
        })
    }

    fn slot(self) -> usize {
        usize::from(self.position - 1) * 4 + self.nucleotide.index()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.position, self.nucleotide.as_char())
    }
}

/// Per-position nucleotide evidence over a frame of codons and amino acids.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneticCode<M> {
    name: String,
    frame: Arc<Frame>,
    cells: Vec<BodyOfEvidence<M>>,
}

impl<M: Mass> GeneticCode<M> {
    pub fn new<I>(name: impl Into<String>, frame: &Arc<Frame>, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Cell, BodyOfEvidence<M>)>,
    {
        let mut slots: Vec<Option<BodyOfEvidence<M>>> = vec![None; 12];
        for (cell, body) in cells {
            Cell::new(cell.position, cell.nucleotide)?;
            if !Arc::ptr_eq(body.frame(), frame) && **body.frame() != **frame {
                return Err(Error::FrameMismatch.at(format!(
                    "evidence.{}.{}",
                    cell.position,
                    cell.nucleotide.as_char()
                )));
            }
            if body.regime() != Regime::Closed {
                return Err(Error::RegimeMismatch.at(format!(
                    "evidence.{}.{}",
                    cell.position,
                    cell.nucleotide.as_char()
                )));
            }
            slots[cell.slot()] = Some(body);
        }
        let mut bodies = Vec::with_capacity(12);
        for (cell, slot) in Cell::all().zip(slots) {
            bodies.push(slot.ok_or(Error::MissingEvidenceCell {
                position: cell.position,
                nucleotide: cell.nucleotide.as_char(),
            })?);
        }
        Ok(GeneticCode {
            name: name.into(),
            frame: Arc::clone(frame),
            cells: bodies,
        })
    }

    /// Every cell carries the vacuous body.
    pub fn vacuous(name: impl Into<String>, frame: &Arc<Frame>) -> Self {
        GeneticCode {
            name: name.into(),
            frame: Arc::clone(frame),
            cells: vec![BodyOfEvidence::vacuous(frame); 12],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn cell(&self, cell: Cell) -> &BodyOfEvidence<M> {
        &self.cells[cell.slot()]
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, &BodyOfEvidence<M>)> {
        Cell::all().zip(&self.cells)
    }

    /// The three incoming bodies for `codon`, in arrival order.
    pub fn bodies_for(&self, codon: Codon) -> [BodyOfEvidence<M>; 3] {
        [1u8, 2, 3].map(|position| {
            self.cell(Cell {
                position,
                nucleotide: codon.nucleotide(position),
            })
            .clone()
        })
    }

    pub fn with_cell(&self, cell: Cell, body: BodyOfEvidence<M>) -> Self {
        let mut next = self.clone();
        next.cells[cell.slot()] = body;
        next
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The two-amino-acid code of the worked example.
    ///
    /// `A1 = {GCU, GCC, GCG, GCA}` and `A2 = {GCA, GAA}` share codon `GCA`.
    /// The first two nucleotides of `GCA` each testify
    /// `{A1: 1/3, A2: 1/3, Θ: 1/3}`. The third testifies `{A2: 1}` in the
    /// unambiguous variant and nothing (`{Θ: 1}`) in the ambiguous one. All
    /// other cells are vacuous.
    pub fn toy(ambiguous: bool) -> Self {
        let frame = Arc::new(toy_frame());
        let a1 = FocalElement::Subset(frame.possibility("A1").cloned().unwrap_or_else(|| frame.empty_set()));
        let a2 = FocalElement::Subset(frame.possibility("A2").cloned().unwrap_or_else(|| frame.empty_set()));
        let third = M::from_ratio(1, 3);
        let shared = BodyOfEvidence::from_raw(
            Arc::clone(&frame),
            [
                (a1, third.clone()),
                (a2.clone(), third.clone()),
                (FocalElement::Theta, third),
            ]
            .into_iter()
            .collect(),
            Regime::Closed,
        );
        let decisive = if ambiguous {
            BodyOfEvidence::vacuous(&frame)
        } else {
            BodyOfEvidence::from_raw(
                Arc::clone(&frame),
                [(a2, M::one())].into_iter().collect(),
                Regime::Closed,
            )
        };
        let name = if ambiguous { "toy-ambiguous" } else { "toy" };
        GeneticCode::vacuous(name, &frame)
            .with_cell(
                Cell {
                    position: 1,
                    nucleotide: Nucleotide::G,
                },
                shared.clone(),
            )
            .with_cell(
                Cell {
                    position: 2,
                    nucleotide: Nucleotide::C,
                },
                shared,
            )
            .with_cell(
                Cell {
                    position: 3,
                    nucleotide: Nucleotide::A,
                },
                decisive,
            )
    }

    /// Each cell `(p, n)` is categorical on the set of codons with `n` at
    /// position `p`, so the three testimonies intersect to the codon itself.
    pub fn positional(name: impl Into<String>, frame: &Arc<Frame>) -> Result<Self> {
        let mut cells = Vec::with_capacity(12);
        for cell in Cell::all() {
            let labels: Vec<String> = Codon::all()
                .filter(|c| c.nucleotide(cell.position) == cell.nucleotide)
                .map(|c| c.to_string())
                .collect();
            let set = frame.subset(&labels)?;
            let body = BodyOfEvidence::new(frame, [(FocalElement::Subset(set), M::one())], Regime::Closed)?;
            cells.push((cell, body));
        }
        GeneticCode::new(name, frame, cells)
    }

    /// The standard genetic code in positional form.
    pub fn standard() -> Result<Self> {
        let frame = Arc::new(super::standard::standard_frame()?);
        Self::positional("standard", &frame)
    }
}

/// 64 codons; `A1` and `A2` overlap on `GCA`.
pub fn toy_frame() -> Frame {
    let ground: Vec<String> = Codon::all().map(|c| c.to_string()).collect();
    Frame::new(
        ground,
        [("A1", vec!["GCU", "GCC", "GCG", "GCA"]), ("A2", vec!["GCA", "GAA"])],
    )
    .unwrap_or_else(|e| unreachable!("toy frame is well formed: {e}"))
}
