use std::fmt::Debug;
use std::hash::Hash;

/// Structure maps of a shape category (Δ or □) in normal form.
///
/// An operator `θ` with `source() == m` and `target() == n` acts on the right
/// of `n`-cells and produces `m`-cells: `x · θ`. Composition follows the
/// presheaf convention `(x · θ) · φ = x · (θ ∘ φ)`.
///
/// Every operator factors uniquely as a degeneracy (epi part) followed by an
/// injective part; the injective part is peeled one elementary face at a time.
pub trait Operator: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    /// Name of the shape, used in file headers ("simplicial", "cubical").
    const KIND: &'static str;

    fn source(&self) -> usize;
    fn target(&self) -> usize;
    fn identity(n: usize) -> Self;

    /// `self ∘ inner`; requires `inner.target() == self.source()`.
    fn after(&self, inner: &Self) -> Self;

    /// True when the operator has no face component.
    fn is_degeneracy(&self) -> bool;

    fn is_identity(&self) -> bool {
        self.source() == self.target() && self.is_degeneracy()
    }

    /// Writes a non-degeneracy as `face(target, slot) ∘ rest`.
    fn peel_face(&self) -> Option<(usize, Self)>;

    /// Number of face slots of an `n`-cell.
    fn face_count(n: usize) -> usize;

    /// The elementary face operator `(n-1) -> n` for `slot`.
    fn face(n: usize, slot: usize) -> Self;

    /// Coefficient of the face in the cellular boundary.
    fn face_sign(n: usize, slot: usize) -> i64;

    /// Human-readable slot name ("2", or "1 0" for coordinate 1, end 0).
    fn slot_label(n: usize, slot: usize) -> String;

    /// Inverse of [`Operator::slot_label`].
    fn parse_slot(n: usize, label: &[&str]) -> Option<usize>;

    /// The elementary degeneracies `(n+1) -> n`.
    fn elementary_degeneracies(n: usize) -> Vec<Self>;

    /// A face slot of an `(n+1)`-cell that is a section of the `j`-th elementary degeneracy.
    fn section_slot(n: usize, j: usize) -> usize;

    /// All degeneracies `n -> k`, in a fixed order.
    fn degeneracies(n: usize, k: usize) -> Vec<Self>;

    /// All operators `m -> n`, in a fixed order.
    fn all(m: usize, n: usize) -> Vec<Self>;

    /// Canonical word of a degeneracy, e.g. `s2s0`; empty for identities.
    fn word(&self) -> String;

    /// Parses a degeneracy word against the dimension of the cell it is applied to.
    fn parse_word(word: &str, cell_dim: usize) -> Option<Self>;

    /// Stable identifier when the operator is used as a morphism of a truncated shape category.
    fn morphism_id(&self) -> String;

    /// Object identifier of dimension `n` in a truncated shape category.
    fn object_id(n: usize) -> String;

    /// Source and target vertex slots of a 1-cell.
    fn edge_endpoints() -> (usize, usize);

    /// The boundary loop of a 2-cell from its first vertex: (face slot, traversed forwards).
    fn square_loop() -> Vec<(usize, bool)>;
}
