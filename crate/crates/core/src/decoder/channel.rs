use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldElement, FieldSpec, MatrixFq, Subspace};
use crate::construction::Flag;
use crate::error::{Error, Result};

/// What the receiver holds after one use of the channel: one subspace per
/// shot, `X_i` for `i = 1, ..., n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedSequence {
    shots: Vec<Subspace>,
}

impl ReceivedSequence {
    /// Requires `n - 1` subspaces of one common `F^n` with `dim X_i <= i`.
    pub fn new(shots: Vec<Subspace>) -> Result<Self> {
        let Some(first) = shots.first() else {
            return Err(Error::DimensionMismatch("empty received sequence".into()));
        };
        let n = first.ambient();
        if shots.len() + 1 != n {
            return Err(Error::DimensionMismatch(format!(
                "{} shots in F^{n}, expected {}",
                shots.len(),
                n.saturating_sub(1)
            )));
        }
        for (idx, x) in shots.iter().enumerate() {
            if x.ambient() != n || x.field() != first.field() {
                return Err(Error::DimensionMismatch(format!(
                    "shot {} lives in a different space",
                    idx + 1
                )));
            }
            if x.dim() > idx + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "shot {} has dimension {} > {}",
                    idx + 1,
                    x.dim(),
                    idx + 1
                )));
            }
        }
        Ok(ReceivedSequence { shots })
    }

    /// The undamaged sequence `X_i = F_i`.
    pub fn from_flag(flag: &Flag) -> Self {
        ReceivedSequence {
            shots: flag.subspaces().to_vec(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.shots[0].ambient()
    }

    pub fn field(&self) -> &FieldSpec {
        self.shots[0].field()
    }

    /// `X_i`, `1 <= i <= n - 1`.
    pub fn get(&self, i: usize) -> &Subspace {
        &self.shots[i - 1]
    }

    pub fn shots(&self) -> &[Subspace] {
        &self.shots
    }
}

/// JSON form of a received sequence, matrices in the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReceivedFile {
    pub field: String,
    pub n: usize,
    pub shots: Vec<String>,
}

impl ReceivedFile {
    pub fn from_received(received: &ReceivedSequence) -> Self {
        ReceivedFile {
            field: received.field().serialize(),
            n: received.ambient(),
            shots: received
                .shots()
                .iter()
                .map(|s| s.basis().to_text())
                .collect(),
        }
    }

    pub fn to_received(&self) -> Result<ReceivedSequence> {
        let field = FieldSpec::parse(&self.field)?;
        let shots = self
            .shots
            .iter()
            .map(|text| {
                let m = MatrixFq::parse_text(&field, text)?;
                if m.cols() != self.n {
                    return Err(Error::Parse(format!(
                        "shot matrix has {} columns, expected {}",
                        m.cols(),
                        self.n
                    )));
                }
                Ok(Subspace::rowspace(&m))
            })
            .collect::<Result<Vec<_>>>()?;
        ReceivedSequence::new(shots)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("received file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Total erasures `sum_i d_S(F_i, X_i) = sum_i (i - dim X_i)`. Fails when
/// some `X_i` is not inside `F_i`, since then insertions occurred.
pub fn error_count(sent: &Flag, received: &ReceivedSequence) -> Result<usize> {
    if sent.ambient() != received.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "flag in F^{} but received sequence in F^{}",
            sent.ambient(),
            received.ambient()
        )));
    }
    let mut total = 0;
    for (idx, (f, x)) in sent.subspaces().iter().zip(received.shots()).enumerate() {
        if !f.contains(x)? {
            return Err(Error::NotAnErasure(idx + 1));
        }
        total += f.dim() - x.dim();
    }
    Ok(total)
}

/// At most `floor((d_f - 1)/2)` errors are guaranteed correctable.
pub fn correctable_budget(d_f: usize) -> usize {
    d_f.saturating_sub(1) / 2
}

/// Uniformly random `dim`-dimensional subspace of `space`: draw coefficient
/// matrices until one has full row rank, then map them through the basis.
pub fn random_subspace<R: Rng + ?Sized>(space: &Subspace, dim: usize, rng: &mut R) -> Subspace {
    assert!(dim <= space.dim());
    let field = space.field();
    if dim == 0 {
        return Subspace::zero(field, space.ambient());
    }
    if dim == space.dim() {
        return space.clone();
    }
    let q = field.q();
    loop {
        let entries = (0..dim * space.dim())
            .map(|_| FieldElement::from_rep_unchecked(rng.gen_range(0..q)))
            .collect();
        let coeffs =
            MatrixFq::from_entries(field, dim, space.dim(), entries).expect("entries are in range");
        if coeffs.rank() == dim {
            return space.image_of(&coeffs).expect("shapes agree");
        }
    }
}

/// Erases `erasures[i-1]` dimensions from shot `i` using the given RNG.
pub fn erase_with_rng<R: Rng + ?Sized>(
    sent: &Flag,
    erasures: &[usize],
    rng: &mut R,
) -> Result<ReceivedSequence> {
    let n = sent.ambient();
    if erasures.len() + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "{} erasure counts for {} shots",
            erasures.len(),
            n - 1
        )));
    }
    if let Some((idx, &e)) = erasures.iter().enumerate().find(|&(idx, &e)| e > idx + 1) {
        return Err(Error::ErasureOutOfRange {
            shot: idx + 1,
            erasures: e,
        });
    }
    let shots = sent
        .subspaces()
        .iter()
        .zip(erasures)
        .map(|(f, &e)| random_subspace(f, f.dim() - e, rng))
        .collect();
    Ok(ReceivedSequence { shots })
}

/// Seeded [`erase_with_rng`]; equal inputs give equal outputs.
pub fn erase(sent: &Flag, erasures: &[usize], seed: u64) -> Result<ReceivedSequence> {
    erase_with_rng(sent, erasures, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Running sums of the received shots past `k1`: `Y_i = {0}` for `i <= k1`
/// and `Y_i = X_{k1+1} + ... + X_i` afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccumulatedSequence {
    shots: Vec<Subspace>,
}

impl AccumulatedSequence {
    pub fn get(&self, i: usize) -> &Subspace {
        &self.shots[i - 1]
    }

    pub fn shots(&self) -> &[Subspace] {
        &self.shots
    }
}

pub fn accumulate(received: &ReceivedSequence, k1: usize) -> AccumulatedSequence {
    let field = received.field();
    let n = received.ambient();
    let mut acc = Subspace::zero(field, n);
    let shots = received
        .shots()
        .iter()
        .enumerate()
        .map(|(idx, x)| {
            if idx + 1 > k1 && !x.is_zero() {
                acc = acc.sum(x).expect("same ambient space");
            }
            acc.clone()
        })
        .collect();
    AccumulatedSequence { shots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_code, SandwichParams};

    fn code(k1: usize, r: usize) -> crate::construction::FlagCode {
        build_code(&SandwichParams::new(FieldSpec::prime(2).unwrap(), k1, r, None).unwrap())
            .unwrap()
    }

    #[test]
    fn error_count_examples() {
        let c = code(2, 1);
        let sent = &c.flags()[0];
        let clean = ReceivedSequence::from_flag(sent);
        assert_eq!(error_count(sent, &clean).unwrap(), 0);
        let all = erase(sent, &[1, 2, 3, 4], 1).unwrap();
        assert_eq!(error_count(sent, &all).unwrap(), 10);
        let one = erase(sent, &[0, 0, 2, 0], 1).unwrap();
        assert_eq!(one.get(3).dim(), 1);
        assert_eq!(error_count(sent, &one).unwrap(), 2);
        assert_eq!(
            error_count(&c.flags()[1], &clean),
            Err(Error::NotAnErasure(1))
        );
    }

    #[test]
    fn budget() {
        assert_eq!(correctable_budget(12), 5);
        assert_eq!(correctable_budget(30), 14);
        assert_eq!(correctable_budget(0), 0);
    }

    #[test]
    fn erase_edges_and_determinism() {
        let c = code(2, 1);
        let sent = &c.flags()[4];
        assert_eq!(
            erase(sent, &[0, 0, 0, 0], 9).unwrap(),
            ReceivedSequence::from_flag(sent)
        );
        let zero = erase(sent, &[1, 2, 3, 4], 9).unwrap();
        assert!(zero.shots().iter().all(Subspace::is_zero));
        let a = erase(sent, &[1, 1, 1, 2], 77).unwrap();
        let b = erase(sent, &[1, 1, 1, 2], 77).unwrap();
        assert_eq!(a, b);
        for (i, x) in a.shots().iter().enumerate() {
            assert!(sent.get(i + 1).contains(x).unwrap());
        }
        assert_eq!(
            erase(sent, &[2, 0, 0, 0], 1),
            Err(Error::ErasureOutOfRange {
                shot: 1,
                erasures: 2
            })
        );
        assert!(erase(sent, &[0, 0, 0], 1).is_err());
    }

    #[test]
    fn random_subspace_is_roughly_uniform() {
        // lines of a 2-dim space over F_2: three, each should appear
        let f = FieldSpec::prime(2).unwrap();
        let plane = Subspace::coordinate(&f, 3, &[0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..3000 {
            *counts
                .entry(random_subspace(&plane, 1, &mut rng))
                .or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert!(
            counts.values().all(|&c| (800..1200).contains(&c)),
            "{counts:?}"
        );
    }

    #[test]
    fn accumulate_examples() {
        let c = code(3, 2);
        let sent = &c.flags()[5];
        let zero = erase(sent, &[1, 2, 3, 4, 5, 6, 7], 0).unwrap();
        assert!(accumulate(&zero, 3).shots().iter().all(Subspace::is_zero));

        // only X_4 survives: Y_i = X_4 for i > 3
        let only4 = erase(sent, &[1, 2, 3, 3, 5, 6, 7], 0).unwrap();
        let y = accumulate(&only4, 3);
        for i in 4..8 {
            assert_eq!(y.get(i), only4.get(4));
        }

        // X_4 and X_5 distinct lines -> dim Y_5 = 2
        let mut shots: Vec<Subspace> = (1..8)
            .map(|_| Subspace::zero(c.params().field(), 8))
            .collect();
        let f4 = sent.get(4);
        let f5 = sent.get(5);
        shots[3] = Subspace::rowspace(&f4.basis().first_rows(1));
        let outside = (0..f5.dim())
            .map(|r| Subspace::rowspace(&f5.basis().row_range(r, r + 1)))
            .find(|line| !shots[3].contains(line).unwrap())
            .unwrap();
        shots[4] = outside;
        let rec = ReceivedSequence::new(shots).unwrap();
        let y = accumulate(&rec, 3);
        assert_eq!(y.get(5).dim(), 2);
        for pair in y.shots().windows(2) {
            assert!(pair[1].contains(&pair[0]).unwrap());
        }
    }

    #[test]
    fn received_file_round_trip() {
        let c = code(2, 1);
        let rec = erase(&c.flags()[2], &[0, 1, 1, 2], 3).unwrap();
        let file = ReceivedFile::from_received(&rec);
        let back = ReceivedFile::from_json(&file.to_json())
            .unwrap()
            .to_received()
            .unwrap();
        assert_eq!(back, rec);
        let mut bad = file.clone();
        bad.shots.pop();
        assert!(bad.to_received().is_err());
    }
}
