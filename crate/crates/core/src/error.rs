use thiserror::Error;

/// Errors raised by graph constructions and topos operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arc {arc}: {which} node {node} is not in the node set")]
    DanglingEndpoint {
        arc: String,
        which: &'static str,
        node: String,
    },
    #[error("duplicate {sort} identifier {id}")]
    DuplicateId { sort: &'static str, id: String },
    #[error("identifier {id} is used both as a node and as an arc")]
    SortCollision { id: String },
    #[error("{what} has no image for {id}")]
    MissingImage { what: &'static str, id: String },
    #[error("{what} refers to unknown identifier {id}")]
    UnknownId { what: &'static str, id: String },
    #[error("morphism does not preserve sources/targets on arcs {arcs:?}")]
    NotNatural { arcs: Vec<String> },
    #[error("codomain of the first morphism is not the domain of the second")]
    CompositionMismatch,
    #[error("morphisms are not parallel")]
    NotParallel,
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("subobject arc {arc} has an endpoint outside the node subset")]
    NotEndpointClosed { arc: String },
    #[error("{what}: {candidates:.0} candidates exceed the cap {cap:.0}")]
    SizeCap {
        what: &'static str,
        candidates: f64,
        cap: f64,
    },
    #[error("expected {expected}")]
    WrongShape { expected: &'static str },
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("arc {arc} carries label {label} which is not in the alphabet")]
    UnknownLabel { arc: String, label: String },
    #[error("labelled graphs use different alphabets")]
    AlphabetMismatch,
    #[error("arc {arc} has no label")]
    MissingLabel { arc: String },
    #[error("not a transition system: arcs {first} and {second} share source, target and label")]
    NotTransitionSystem { first: String, second: String },
    #[error("morphism does not preserve labels on arcs {arcs:?}")]
    LabelMismatch { arcs: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a configured size cap rather than bad input.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}
