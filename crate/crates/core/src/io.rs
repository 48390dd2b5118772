//! JSON documents for monads and cohomology tables.

use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyTable;
use crate::monad::LinearMonad;
use crate::polyring::{LinearForm, LinearFormMatrix};
use crate::scalar::{FieldTag, ParseScalarError, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document is over {document}, requested {requested}")]
    FieldMismatch { document: FieldTag, requested: FieldTag },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Monad(#[from] crate::Error),
}

/// Field-agnostic form of a monad: every coefficient is a string.
///
/// `alpha` is `w` rows of `v` forms, `beta` is `u` rows of `w` forms, each
/// form an array of `n + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadDocument {
    pub n: usize,
    pub field: FieldTag,
    pub v: usize,
    pub w: usize,
    pub u: usize,
    pub alpha: Vec<Vec<Vec<String>>>,
    pub beta: Vec<Vec<Vec<String>>>,
}

fn matrix_to_doc<F: Scalar>(m: &LinearFormMatrix<F>) -> Vec<Vec<Vec<String>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).coeffs().iter().map(ToString::to_string).collect()).collect())
        .collect()
}

fn matrix_from_doc<F: Scalar>(
    name: &str,
    n: usize,
    rows: usize,
    cols: usize,
    data: &[Vec<Vec<String>>],
) -> Result<LinearFormMatrix<F>, FormatError> {
    if data.len() != rows {
        return Err(FormatError::Shape(format!("{name} has {} rows, expected {rows}", data.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(FormatError::Shape(format!("{name} row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, form) in row.iter().enumerate() {
            if form.len() != n + 1 {
                return Err(FormatError::Shape(format!(
                    "{name}[{i}][{j}] has {} coefficients, expected {}",
                    form.len(),
                    n + 1
                )));
            }
            let coeffs = form.iter().map(|s| F::parse(s)).collect::<Result<Vec<F>, _>>()?;
            entries.push(LinearForm::new(coeffs));
        }
    }
    LinearFormMatrix::new(n, rows, cols, entries).map_err(|e| FormatError::Shape(e.to_string()))
}

impl MonadDocument {
    pub fn from_monad<F: Scalar>(m: &LinearMonad<F>) -> Self {
        MonadDocument {
            n: m.n(),
            field: F::field(),
            v: m.v(),
            w: m.w(),
            u: m.u(),
            alpha: matrix_to_doc(m.alpha()),
            beta: matrix_to_doc(m.beta()),
        }
    }

    pub fn to_monad<F: Scalar>(&self) -> Result<LinearMonad<F>, FormatError> {
        if self.field != F::field() {
            return Err(FormatError::FieldMismatch { document: self.field, requested: F::field() });
        }
        let alpha = matrix_from_doc("alpha", self.n, self.w, self.v, &self.alpha)?;
        let beta = matrix_from_doc("beta", self.n, self.u, self.w, &self.beta)?;
        Ok(LinearMonad::new(self.n, self.v, self.w, self.u, alpha, beta)?)
    }

    pub fn parse(json: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(json)?)
    }

    /// Compact, fields in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

pub fn monad_to_json<F: Scalar>(m: &LinearMonad<F>) -> String {
    MonadDocument::from_monad(m).to_json()
}

pub fn monad_from_json<F: Scalar>(json: &str) -> Result<LinearMonad<F>, FormatError> {
    MonadDocument::parse(json)?.to_monad()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub k_min: i64,
    pub k_max: i64,
    pub h: Vec<Vec<usize>>,
    pub chi: Vec<i64>,
    pub charge: Option<usize>,
    pub natural: Vec<bool>,
}

impl From<&CohomologyTable> for TableDocument {
    fn from(t: &CohomologyTable) -> Self {
        TableDocument {
            k_min: t.k_min,
            k_max: t.k_max,
            h: t.h.clone(),
            chi: t.chi.clone(),
            charge: t.charge,
            natural: t.natural.clone(),
        }
    }
}

pub fn table_to_json(t: &CohomologyTable) -> String {
    serde_json::to_string(&TableDocument::from(t)).expect("document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{gallery, random_monad, GALLERY};
    use crate::scalar::{Rational, F101};
    use proptest::prelude::*;

    #[test]
    fn dnoi_document() {
        let m: LinearMonad<Rational> = gallery("dnoi").unwrap();
        let json = monad_to_json(&m);
        assert_eq!(
            json,
            r#"{"n":3,"field":{"type":"Q"},"v":1,"w":4,"u":1,"alpha":[[["1","0","0","0"]],[["0","1","0","0"]],[["0","0","0","0"]],[["0","0","0","0"]]],"beta":[[["0","-1","0","0"],["1","0","0","0"],["0","0","1","0"],["0","0","0","1"]]]}"#
        );
        assert_eq!(monad_from_json::<Rational>(&json).unwrap(), m);
    }

    #[test]
    fn gallery_round_trips() {
        for name in GALLERY {
            let m: LinearMonad<Rational> = gallery(name).unwrap();
            let json = monad_to_json(&m);
            assert_eq!(MonadDocument::parse(&json).unwrap().to_json(), json);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(MonadDocument::parse("{"), Err(FormatError::Json(_))));
        let m: LinearMonad<F101> = gallery("nc-p2").unwrap();
        let json = monad_to_json(&m);
        assert!(json.contains(r#"{"type":"Fp","p":101}"#));
        assert!(matches!(monad_from_json::<Rational>(&json), Err(FormatError::FieldMismatch { .. })));
        let bad = json.replacen(r#""v":1"#, r#""v":2"#, 1);
        assert!(matches!(monad_from_json::<F101>(&bad), Err(FormatError::Shape(_))));
        let bad = json.replacen(r#""1""#, r#""x""#, 1);
        assert!(matches!(monad_from_json::<F101>(&bad), Err(FormatError::Scalar(_))));
    }

    #[test]
    fn rational_coefficients() {
        let json = r#"{"n":1,"field":{"type":"Q"},"v":0,"w":1,"u":0,"alpha":[[]],"beta":[]}"#;
        let m = monad_from_json::<Rational>(json).unwrap();
        assert_eq!(m, LinearMonad::trivial(1, 1));
        assert_eq!(monad_to_json(&m), json);
        let doc = MonadDocument::parse(r#"{"n":1,"field":{"type":"Q"},"v":1,"w":2,"u":0,"alpha":[[["6/4","0"]],[["0","-1/3"]]],"beta":[]}"#).unwrap();
        let m = doc.to_monad::<Rational>().unwrap();
        assert!(monad_to_json(&m).contains(r#""3/2""#));
    }

    #[test]
    fn table_document() {
        let m: LinearMonad<Rational> = gallery("dnoi").unwrap();
        let t = crate::cohomology::cohomology_table(&m, -1, 0).unwrap();
        assert_eq!(
            table_to_json(&t),
            r#"{"k_min":-1,"k_max":0,"h":[[0,0],[1,0],[0,0],[0,0]],"chi":[-1,0],"charge":1,"natural":[true,true,true]}"#
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn canonical_round_trip(seed in 0u64..10_000, n in 1usize..4, v in 0usize..3, u in 0usize..3) {
            let m = random_monad::<Rational>(n, v, v + u + n, u, seed, 50).unwrap();
            let json = monad_to_json(&m);
            prop_assert_eq!(monad_from_json::<Rational>(&json).unwrap(), m);
            prop_assert_eq!(MonadDocument::parse(&json).unwrap().to_json(), json);
        }
    }
}
