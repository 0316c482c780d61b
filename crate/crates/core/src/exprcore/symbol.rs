use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// One of the three vectors of an orthonormal frame `{e1, e2, e3}`.
///
/// `E3` is always the structure vector field ξ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrameIndex {
    E1,
    E2,
    E3,
}

impl FrameIndex {
    pub const ALL: [FrameIndex; 3] = [FrameIndex::E1, FrameIndex::E2, FrameIndex::E3];

    /// Zero-based position in component triples.
    pub fn idx(self) -> usize {
        match self {
            FrameIndex::E1 => 0,
            FrameIndex::E2 => 1,
            FrameIndex::E3 => 2,
        }
    }

    pub fn from_idx(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameIndex::E1 => "e1",
            FrameIndex::E2 => "e2",
            FrameIndex::E3 => "e3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "e1" => Some(FrameIndex::E1),
            "e2" => Some(FrameIndex::E2),
            "e3" => Some(FrameIndex::E3),
            _ => None,
        }
    }
}

impl fmt::Display for FrameIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolKind {
    /// A smooth function on the hypersurface; differentiating it along a
    /// frame direction produces a fresh formal-derivative symbol.
    GeometricFunction,
    /// Differentiates to zero.
    Constant,
    FormalDerivative {
        direction: FrameIndex,
        base: Symbol,
    },
}

#[derive(Debug)]
struct SymbolData {
    name: String,
    display: String,
    kind: SymbolKind,
}

/// A named scalar. Identity, ordering and hashing use the name only, so the
/// global monomial order is the lexicographic order of names.
#[derive(Clone)]
pub struct Symbol(Arc<SymbolData>);

impl Symbol {
    pub fn new(name: impl Into<String>, kind: SymbolKind) -> Self {
        let name = name.into();
        Symbol(Arc::new(SymbolData {
            display: name.clone(),
            name,
            kind,
        }))
    }

    pub fn with_display(name: impl Into<String>, display: impl Into<String>, kind: SymbolKind) -> Self {
        Symbol(Arc::new(SymbolData {
            name: name.into(),
            display: display.into(),
            kind,
        }))
    }

    pub fn geometric(name: impl Into<String>) -> Self {
        Self::new(name, SymbolKind::GeometricFunction)
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Self::new(name, SymbolKind::Constant)
    }

    /// The formal derivative `D(dir, base)`. Returns `None` for constants,
    /// whose derivative is the zero expression rather than a symbol.
    pub fn derivative(dir: FrameIndex, base: &Symbol) -> Option<Symbol> {
        if base.is_constant() {
            return None;
        }
        Some(Symbol(Arc::new(SymbolData {
            name: format!("D({},{})", dir.name(), base.name()),
            display: format!("D({},{})", dir.name(), base.display()),
            kind: SymbolKind::FormalDerivative {
                direction: dir,
                base: base.clone(),
            },
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Human-facing name (Greek letters for the geometric scalars).
    pub fn display(&self) -> &str {
        &self.0.display
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.0.kind
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.0.kind, SymbolKind::Constant)
    }

    pub fn is_formal_derivative(&self) -> bool {
        matches!(self.0.kind, SymbolKind::FormalDerivative { .. })
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.0.name == other.0.name
    }
}

impl Eq for Symbol {}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.name.cmp(&other.0.name)
    }
}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.name.hash(state);
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("symbol `{0}` is already declared")]
pub struct DuplicateSymbol(pub String);

/// Name → symbol lookup used by the parser. Frozen once a context is built.
#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    symbols: BTreeMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, sym: Symbol) -> Result<Symbol, DuplicateSymbol> {
        if self.symbols.contains_key(sym.name()) {
            return Err(DuplicateSymbol(sym.name().to_string()));
        }
        self.symbols.insert(sym.name().to_string(), sym.clone());
        Ok(sym)
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<Symbol, DuplicateSymbol> {
        self.insert(Symbol::new(name, kind))
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    /// Looks up `name`, declaring it as a geometric function if absent.
    pub fn get_or_declare(&mut self, name: &str) -> Symbol {
        self.symbols
            .entry(name.to_string())
            .or_insert_with(|| Symbol::geometric(name))
            .clone()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}
