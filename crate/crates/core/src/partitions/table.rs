use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::character::{character_memo, Memo};
use super::{check_degree, partitions_unchecked, Partition, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::json_int;

/// A class function on `S_n`, keyed by cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CharacterVectorJson", try_from = "CharacterVectorJson")]
pub struct CharacterVector {
    pub n: usize,
    pub values: BTreeMap<Partition, BigInt>,
}

impl CharacterVector {
    pub fn get(&self, class: &Partition) -> Option<&BigInt> {
        self.values.get(class)
    }

    /// Value at the identity class `(1^n)`.
    pub fn degree(&self) -> Option<&BigInt> {
        self.values.get(&Partition::column(self.n))
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterVectorJson {
    n: usize,
    values: Vec<ClassValue>,
}

#[derive(Serialize, Deserialize)]
struct ClassValue {
    class: Partition,
    #[serde(with = "json_int::bigint")]
    value: BigInt,
}

impl From<CharacterVector> for CharacterVectorJson {
    fn from(v: CharacterVector) -> Self {
        CharacterVectorJson {
            n: v.n,
            values: v
                .values
                .into_iter()
                .map(|(class, value)| ClassValue { class, value })
                .collect(),
        }
    }
}

impl TryFrom<CharacterVectorJson> for CharacterVector {
    type Error = String;

    fn try_from(j: CharacterVectorJson) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for ClassValue { class, value } in j.values {
            if class.size() != j.n {
                return Err(format!("class {class} is not a partition of {}", j.n));
            }
            values.insert(class, value);
        }
        Ok(CharacterVector { n: j.n, values })
    }
}

/// Irreducible character table of `S_n`; rows are irreducibles, columns are
/// classes, both in canonical partition order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub n: usize,
    pub classes: Vec<Partition>,
    pub irreps: Vec<Partition>,
    #[serde(with = "json_int::bigint_matrix")]
    pub table: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn compute(n: usize) -> Result<Self> {
        Self::compute_capped(n, DEFAULT_MAX_N)
    }

    pub fn compute_capped(n: usize, max_n: usize) -> Result<Self> {
        check_degree(n, max_n)?;
        let labels = partitions_unchecked(n);
        // One memo per column: strips are removed in the order of that class.
        let columns: Vec<Vec<BigInt>> = labels
            .par_iter()
            .map(|mu| {
                let mut memo = Memo::new();
                labels
                    .iter()
                    .map(|lambda| character_memo(lambda.parts(), mu.parts(), 0, &mut memo))
                    .collect()
            })
            .collect();
        let table = (0..labels.len())
            .map(|i| columns.iter().map(|col| col[i].clone()).collect())
            .collect();
        Ok(CharacterTable {
            n,
            classes: labels.clone(),
            irreps: labels,
            table,
        })
    }

    pub fn irrep_index(&self, lambda: &Partition) -> Option<usize> {
        self.irreps.binary_search(lambda).ok()
    }

    pub fn class_index(&self, mu: &Partition) -> Option<usize> {
        self.classes.binary_search(mu).ok()
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        Some(&self.table[self.irrep_index(lambda)?][self.class_index(mu)?])
    }

    /// The row of `lambda` as a class function.
    pub fn character(&self, lambda: &Partition) -> Option<CharacterVector> {
        let row = &self.table[self.irrep_index(lambda)?];
        Some(CharacterVector {
            n: self.n,
            values: self
                .classes
                .iter()
                .cloned()
                .zip(row.iter().cloned())
                .collect(),
        })
    }

    /// Structural checks used when loading from disk.
    fn check_shape(&self) -> std::result::Result<(), String> {
        let expected = partitions_unchecked(self.n);
        if self.classes != expected || self.irreps != expected {
            return Err("labels are not the partitions of n in canonical order".into());
        }
        if self.table.len() != expected.len()
            || self.table.iter().any(|r| r.len() != expected.len())
        {
            return Err("table is not square over the partitions of n".into());
        }
        let identity = self
            .class_index(&Partition::column(self.n))
            .ok_or("missing identity class")?;
        for (lambda, row) in self.irreps.iter().zip(&self.table) {
            if row[identity] != BigInt::from(lambda.dimension()) {
                return Err(format!("degree of {lambda} does not match its dimension"));
            }
        }
        Ok(())
    }
}

/// On-disk memo of character tables: one `chartab_<n>.json` per degree.
///
/// Writes go through a uniquely named temporary file and an atomic rename,
/// so concurrent writers of the same `n` leave one complete file behind.
#[derive(Clone, Debug)]
pub struct CharacterTableCache {
    dir: PathBuf,
    max_n: usize,
}

static TMP_COUNTER: AtomicUsize = AtomicUsize::new(0);

impl CharacterTableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CharacterTableCache {
            dir: dir.into(),
            max_n: DEFAULT_MAX_N,
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("chartab_{n}.json"))
    }

    /// Reads `chartab_<n>.json` if present, otherwise computes and stores it.
    pub fn load_or_compute(&self, n: usize) -> Result<CharacterTable> {
        check_degree(n, self.max_n)?;
        if let Some(table) = self.load(n)? {
            return Ok(table);
        }
        let table = CharacterTable::compute_capped(n, self.max_n)?;
        self.store(&table)?;
        Ok(table)
    }

    pub fn load(&self, n: usize) -> Result<Option<CharacterTable>> {
        let path = self.path_for(n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| Error::CorruptCache {
            path: path.clone(),
            reason,
        };
        let table: CharacterTable =
            serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if table.n != n {
            return Err(corrupt(format!("file holds n = {}", table.n)));
        }
        table.check_shape().map_err(corrupt)?;
        Ok(Some(table))
    }

    pub fn store(&self, table: &CharacterTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(table.n);
        let tmp = self.dir.join(format!(
            ".chartab_{}.{}.{}.tmp",
            table.n,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(table)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{factorial, mn_character};
    use num_traits::Zero;

    #[test]
    fn table_matches_direct_evaluation() {
        let t = CharacterTable::compute(6).unwrap();
        for (i, lambda) in t.irreps.iter().enumerate() {
            for (j, mu) in t.classes.iter().enumerate() {
                assert_eq!(t.table[i][j], mn_character(lambda, mu).unwrap());
            }
        }
    }

    #[test]
    fn s4_table() {
        let t = CharacterTable::compute(4).unwrap();
        let rows: Vec<Vec<i64>> = t
            .table
            .iter()
            .map(|r| r.iter().map(|v| v.try_into().unwrap()).collect())
            .collect();
        // classes: (4) (3,1) (2,2) (2,1,1) (1^4)
        assert_eq!(
            rows,
            vec![
                vec![1, 1, 1, 1, 1],
                vec![-1, 0, -1, 1, 3],
                vec![0, -1, 2, 0, 2],
                vec![1, 0, -1, -1, 3],
                vec![-1, 1, 1, -1, 1],
            ]
        );
    }

    #[test]
    fn first_orthogonality() {
        for n in 1..=8 {
            let t = CharacterTable::compute(n).unwrap();
            let sizes: Vec<BigInt> = t.classes.iter().map(|c| c.class_size().into()).collect();
            let order = BigInt::from(factorial(n));
            for a in 0..t.irreps.len() {
                for b in 0..t.irreps.len() {
                    let s: BigInt = (0..t.classes.len())
                        .map(|j| &sizes[j] * &t.table[a][j] * &t.table[b][j])
                        .sum();
                    let expected = if a == b {
                        order.clone()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(s, expected, "n={n} rows {a},{b}");
                }
            }
        }
    }

    #[test]
    fn sign_twist() {
        for n in 1..=8 {
            let t = CharacterTable::compute(n).unwrap();
            for lambda in &t.irreps {
                for mu in &t.classes {
                    let v = t.value(lambda, mu).unwrap();
                    let w = t.value(&lambda.conjugate(), mu).unwrap();
                    if (n - mu.len()) % 2 == 0 {
                        assert_eq!(v, w);
                    } else {
                        assert_eq!(v, &-w);
                    }
                }
            }
        }
    }

    #[test]
    fn cache_round_trip_and_schema() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterTableCache::new(dir.path());
        assert!(cache.load(5).unwrap().is_none());
        let computed = cache.load_or_compute(5).unwrap();
        let path = cache.path_for(5);
        assert!(path.ends_with("chartab_5.json"));
        let raw: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(raw["n"], 5);
        assert_eq!(raw["classes"][0], serde_json::json!([5]));
        assert_eq!(raw["irreps"][6], serde_json::json!([1, 1, 1, 1, 1]));
        assert_eq!(raw["table"][1][6], 4);
        assert_eq!(cache.load(5).unwrap().unwrap(), computed);
        // second call is served from disk
        assert_eq!(cache.load_or_compute(5).unwrap(), computed);
    }

    #[test]
    fn cache_rejects_corrupt_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterTableCache::new(dir.path());
        let mut t = CharacterTable::compute(4).unwrap();
        t.table[1][4] = BigInt::from(7);
        fs::write(cache.path_for(4), serde_json::to_vec(&t).unwrap()).unwrap();
        assert!(matches!(cache.load(4), Err(Error::CorruptCache { .. })));
        fs::write(cache.path_for(4), "{").unwrap();
        assert!(matches!(cache.load(4), Err(Error::CorruptCache { .. })));
    }

    #[test]
    fn concurrent_writers_agree() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CharacterTableCache::new(dir.path());
        let tables: Vec<CharacterTable> = (0..8)
            .into_par_iter()
            .map(|_| cache.load_or_compute(6).unwrap())
            .collect();
        assert!(tables.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(cache.load(6).unwrap().unwrap(), tables[0]);
        let leftovers = fs::read_dir(dir.path()).unwrap().count();
        assert_eq!(leftovers, 1);
    }

    #[test]
    fn character_vector_json() {
        let t = CharacterTable::compute(3).unwrap();
        let v = t.character(&Partition::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(v.degree(), Some(&BigInt::from(2)));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"values":[{"class":[3],"value":-1},{"class":[2,1],"value":0},{"class":[1,1,1],"value":2}]}"#
        );
        assert_eq!(serde_json::from_str::<CharacterVector>(&s).unwrap(), v);
    }
}
