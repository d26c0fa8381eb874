//! CSV loading and the per-dataset preparation used by the experiments.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{Dataset, FeatureInfo};
use crate::error::{Error, Result};

/// A header plus a grid of cells. Empty cells are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    header: Vec<String>,
    rows: Vec<Vec<Option<String>>>,
}

impl RawTable {
    pub fn new(header: Vec<String>, rows: Vec<Vec<Option<String>>>) -> Result<Self> {
        let mut seen = HashSet::new();
        for h in &header {
            if !seen.insert(h.as_str()) {
                return Err(Error::Schema(format!("duplicate column header {h:?}")));
            }
        }
        if let Some(i) = rows.iter().position(|r| r.len() != header.len()) {
            return Err(Error::Schema(format!(
                "row {} has {} cells, header has {}",
                i + 1,
                rows[i].len(),
                header.len()
            )));
        }
        Ok(Self { header, rows })
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Option<String>>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Case-insensitive lookup trying each alias in turn.
    pub fn find_column(&self, aliases: &[&str]) -> Option<usize> {
        aliases.iter().find_map(|a| {
            self.header
                .iter()
                .position(|h| h.trim().eq_ignore_ascii_case(a))
        })
    }

    fn require(&self, aliases: &[&str]) -> Result<usize> {
        self.find_column(aliases).ok_or_else(|| {
            Error::Schema(format!(
                "missing required column {} (have: {})",
                aliases.join(" / "),
                self.header.join(", ")
            ))
        })
    }

    fn cells(&self, col: usize) -> impl Iterator<Item = Option<&str>> + '_ {
        self.rows.iter().map(move |r| r[col].as_deref())
    }
}

/// Reads a comma-separated file with a header row.
pub fn load_csv(path: impl AsRef<Path>) -> Result<RawTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, path)
}

/// Like [`load_csv`] over any reader; `origin` only labels error messages.
pub fn read_csv<R: Read>(reader: R, origin: &Path) -> Result<RawTable> {
    let csv_err = |line: u64, e: &dyn fmt::Display| Error::Csv {
        path: origin.to_path_buf(),
        line,
        message: e.to_string(),
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| csv_err(1, &e))?
        .iter()
        .map(|h| h.trim_start_matches('\u{feff}').to_string())
        .collect();
    let mut seen = HashSet::new();
    for h in &header {
        if !seen.insert(h.clone()) {
            return Err(csv_err(1, &format!("duplicate column header {h:?}")));
        }
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_err(line, &e)
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != header.len() {
            return Err(csv_err(
                line,
                &format!("ragged row: {} fields, header has {}", rec.len(), header.len()),
            ));
        }
        rows.push(
            rec.iter()
                .map(|c| if c.is_empty() { None } else { Some(c.to_string()) })
                .collect(),
        );
    }
    RawTable::new(header, rows)
}

fn is_missing_marker(s: &str) -> bool {
    s.is_empty() || matches!(s, "NA" | "NaN" | "nan" | "?" | "None" | "null")
}

/// Numeric cell, treating common missing-value markers as absent.
fn parse_cell(cell: Option<&str>, column: &str, row: usize) -> Result<Option<f64>> {
    let Some(s) = cell.map(str::trim) else {
        return Ok(None);
    };
    if is_missing_marker(s) {
        return Ok(None);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Schema(format!("column {column}, row {}: {s:?} is not numeric", row + 1)))?;
    if !v.is_finite() {
        return Ok(None);
    }
    Ok(Some(v))
}

fn numeric_column(raw: &RawTable, col: usize) -> Result<Vec<Option<f64>>> {
    let name = &raw.header[col];
    raw.cells(col)
        .enumerate()
        .map(|(i, c)| parse_cell(c, name, i))
        .collect()
}

fn complete_column(raw: &RawTable, col: usize) -> Result<Vec<f64>> {
    numeric_column(raw, col)?
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| Error::Schema(format!("column {}, row {}: missing value", raw.header[col], i + 1)))
        })
        .collect()
}

/// Median of the present values; the mean of the middle pair for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) })
}

fn impute_median(col: Vec<Option<f64>>, name: &str) -> Result<Vec<f64>> {
    let present: Vec<f64> = col.iter().flatten().copied().collect();
    let m = median(&present).ok_or_else(|| Error::Schema(format!("column {name} has no values")))?;
    Ok(col.into_iter().map(|v| v.unwrap_or(m)).collect())
}

/// Most frequent value; ties go to the lexicographically smallest.
fn mode<'a>(values: impl Iterator<Item = &'a str>) -> Option<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    let mut best: Option<(&str, usize)> = None;
    for (k, c) in counts {
        if best.is_none_or(|(_, bc)| c > bc) {
            best = Some((k, c));
        }
    }
    best.map(|(k, _)| k.to_string())
}

/// Titanic passenger table as nine features: class, sex, age, family
/// counts, fare and a one-hot port of embarkation. Class 0 is death.
pub fn prepare_titanic(raw: &RawTable) -> Result<Dataset> {
    let c_pclass = raw.require(&["Pclass", "passengerClass"])?;
    let c_sex = raw.require(&["Sex"])?;
    let c_age = raw.require(&["Age"])?;
    let c_sibsp = raw.require(&["SibSp"])?;
    let c_parch = raw.require(&["ParCh", "Parch"])?;
    let c_fare = raw.require(&["Fare"])?;
    let c_emb = raw.require(&["Embarked"])?;
    let c_surv = raw.require(&["Survived"])?;

    let labels = raw
        .cells(c_surv)
        .enumerate()
        .map(|(i, c)| match c.map(str::trim) {
            Some("0") | Some("no") | Some("No") => Ok(0),
            Some("1") | Some("yes") | Some("Yes") => Ok(1),
            other => Err(Error::Schema(format!("Survived, row {}: unusable label {other:?}", i + 1))),
        })
        .collect::<Result<Vec<usize>>>()?;

    let sex = raw
        .cells(c_sex)
        .enumerate()
        .map(|(i, c)| match c.map(str::trim).filter(|s| !is_missing_marker(s)).map(str::to_ascii_lowercase).as_deref() {
            Some("female") => Ok(Some(0.0)),
            Some("male") => Ok(Some(1.0)),
            None => Ok(None),
            Some(other) => Err(Error::Schema(format!("Sex, row {}: unknown value {other:?}", i + 1))),
        })
        .collect::<Result<Vec<_>>>()?;

    let pclass = parse_pclass(raw, c_pclass)?;
    let mut columns = vec![
        impute_median(pclass, "Pclass")?,
        impute_median(sex, "Sex")?,
        impute_median(numeric_column(raw, c_age)?, "Age")?,
        impute_median(numeric_column(raw, c_sibsp)?, "SibSp")?,
        impute_median(numeric_column(raw, c_parch)?, "ParCh")?,
        impute_median(numeric_column(raw, c_fare)?, "Fare")?,
    ];

    let ports: Vec<Option<String>> = raw
        .cells(c_emb)
        .map(|c| c.map(str::trim).filter(|s| !is_missing_marker(s)).map(str::to_ascii_uppercase))
        .collect();
    let fill = mode(ports.iter().flatten().map(String::as_str))
        .ok_or_else(|| Error::Schema("Embarked has no values".into()))?;
    for port in ["C", "Q", "S"] {
        columns.push(
            ports
                .iter()
                .map(|p| f64::from(u8::from(p.as_deref().unwrap_or(&fill) == port)))
                .collect(),
        );
    }

    let features = vec![
        FeatureInfo::new("Pclass").with_labels("good", "bad"),
        FeatureInfo::new("Sex").with_labels("female", "male"),
        FeatureInfo::new("Age").with_labels("low", "high"),
        FeatureInfo::new("SibSp"),
        FeatureInfo::new("ParCh"),
        FeatureInfo::new("Fare"),
        FeatureInfo::new("Embarked C").with_labels("false", "true"),
        FeatureInfo::new("Embarked Q").with_labels("false", "true"),
        FeatureInfo::new("Embarked S").with_labels("false", "true"),
    ];
    Dataset::new(features, columns, labels, vec!["Death".into(), "Survival".into()])
}

/// Accepts numeric classes as well as "1st"/"2nd"/"3rd".
fn parse_pclass(raw: &RawTable, col: usize) -> Result<Vec<Option<f64>>> {
    raw.cells(col)
        .enumerate()
        .map(|(i, c)| match c.map(str::trim) {
            Some("1st") => Ok(Some(1.0)),
            Some("2nd") => Ok(Some(2.0)),
            Some("3rd") => Ok(Some(3.0)),
            other => parse_cell(other, "Pclass", i),
        })
        .collect()
}

/// Class 1 when the target exceeds its mean. A constant target is rejected.
fn binarize_at_mean(target: &[f64], name: &str) -> Result<Vec<usize>> {
    let mean = target.iter().sum::<f64>() / target.len() as f64;
    let labels: Vec<usize> = target.iter().map(|&v| usize::from(v > mean)).collect();
    if labels.iter().all(|&c| c == labels[0]) {
        return Err(Error::Schema(format!("target {name} has a single class after binarization")));
    }
    Ok(labels)
}

fn prepare_tabular(
    raw: &RawTable,
    features: &[(&str, &[&str])],
    target: &[&str],
    class_names: [&str; 2],
) -> Result<Dataset> {
    let mut columns = Vec::with_capacity(features.len());
    let mut infos = Vec::with_capacity(features.len());
    for &(name, aliases) in features {
        let col = raw.require(aliases)?;
        columns.push(complete_column(raw, col)?);
        infos.push(FeatureInfo::new(name));
    }
    let t = raw.require(target)?;
    let labels = binarize_at_mean(&complete_column(raw, t)?, target[0])?;
    Dataset::new(infos, columns, labels, class_names.map(String::from).to_vec())
}

/// Boston housing: twelve features (the race-related column is dropped),
/// with the median value split at its mean.
pub fn prepare_boston(raw: &RawTable) -> Result<Dataset> {
    const F: &[(&str, &[&str])] = &[
        ("CRIM", &["CRIM"]),
        ("ZN", &["ZN"]),
        ("INDUS", &["INDUS"]),
        ("CHAS", &["CHAS"]),
        ("NOX", &["NOX"]),
        ("RM", &["RM"]),
        ("AGE", &["AGE"]),
        ("DIS", &["DIS"]),
        ("RAD", &["RAD"]),
        ("TAX", &["TAX"]),
        ("PTRATIO", &["PTRATIO"]),
        ("LSTAT", &["LSTAT"]),
    ];
    prepare_tabular(raw, F, &["MEDV", "target", "price"], ["Low price", "High price"])
}

/// Diabetes progression: ten baseline variables, target split at its mean.
/// Serum columns may be named `S1..S6` or by their measurement.
pub fn prepare_diabetes(raw: &RawTable) -> Result<Dataset> {
    const F: &[(&str, &[&str])] = &[
        ("AGE", &["AGE"]),
        ("SEX", &["SEX"]),
        ("BMI", &["BMI"]),
        ("BP", &["BP"]),
        ("TC", &["TC", "S1"]),
        ("LDL", &["LDL", "S2"]),
        ("HDL", &["HDL", "S3"]),
        ("TCH", &["TCH", "S4"]),
        ("LTG", &["LTG", "S5"]),
        ("GLU", &["GLU", "S6"]),
    ];
    prepare_tabular(raw, F, &["Y", "target", "progression"], ["Low progression", "High progression"])
}

// Independent ChaCha streams keep noise draws and the split from sharing
// random numbers even when both use the same seed.
const SPLIT_STREAM: u64 = 0;
const NOISE_STREAM: u64 = 1;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub count: usize,
    pub seed: u64,
}

/// Appends `Noise 1..=count` columns of uniform `[0, 1)` draws.
pub fn add_noise_features(data: &Dataset, spec: NoiseSpec) -> Result<Dataset> {
    let mut out = data.clone();
    let mut rng = stream(spec.seed, NOISE_STREAM);
    for k in 1..=spec.count {
        let col = (0..data.n_rows()).map(|_| rng.gen::<f64>()).collect();
        out.push_feature(FeatureInfo::noise(format!("Noise {k}")), col)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(seed: u64) -> Self {
        Self {
            train_fraction: 0.7,
            seed,
        }
    }

    pub fn train_len(&self, n: usize) -> usize {
        (self.train_fraction * n as f64).floor() as usize
    }
}

/// Shuffled split: the first `floor(fraction * N)` rows train, the rest validate.
pub fn split_train_val(data: &Dataset, spec: SplitSpec) -> Result<(Dataset, Dataset)> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(Error::config(format!(
            "train fraction must lie in (0, 1), got {}",
            spec.train_fraction
        )));
    }
    let n = data.n_rows();
    if n < 10 {
        return Err(Error::arg(format!("need at least 10 rows to split, got {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut stream(spec.seed, SPLIT_STREAM));
    let cut = spec.train_len(n);
    Ok((data.select_rows(&order[..cut]), data.select_rows(&order[cut..])))
}

/// The three bundled preparation recipes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetId {
    Titanic,
    Boston,
    Diabetes,
}

impl DatasetId {
    pub const ALL: [DatasetId; 3] = [DatasetId::Titanic, DatasetId::Boston, DatasetId::Diabetes];

    pub fn name(self) -> &'static str {
        match self {
            DatasetId::Titanic => "titanic",
            DatasetId::Boston => "boston",
            DatasetId::Diabetes => "diabetes",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.csv", self.name())
    }

    pub fn path_in(self, dir: &Path) -> PathBuf {
        dir.join(self.file_name())
    }

    pub fn prepare(self, raw: &RawTable) -> Result<Dataset> {
        match self {
            DatasetId::Titanic => prepare_titanic(raw),
            DatasetId::Boston => prepare_boston(raw),
            DatasetId::Diabetes => prepare_diabetes(raw),
        }
    }

    /// Loads `<dir>/<name>.csv` and prepares it.
    pub fn load(self, dir: &Path) -> Result<Dataset> {
        self.prepare(&load_csv(self.path_in(dir))?)
    }
}

impl fmt::Display for DatasetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DatasetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DatasetId::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown dataset {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FeatureId;

    fn table(text: &str) -> Result<RawTable> {
        read_csv(text.as_bytes(), Path::new("inline.csv"))
    }

    const TITANIC: &str = "\
pclass,survived,name,sex,age,sibsp,parch,fare,embarked
1,1,\"Allen, Miss. Elisabeth\",female,29,0,0,211.3375,S
1,0,\"Allison, Master. Hudson\",male,,1,2,151.55,C
3,0,\"Abbing, Mr. Anthony\",male,42,0,0,7.55,?
2,1,\"Angle, Mrs. William\",female,36,1,0,26,Q
3,0,\"Barry, Miss. Julia\",female,27,0,0,,S
";

    #[test]
    fn loads_with_missing_and_quoted_cells() {
        let t = table(TITANIC).unwrap();
        assert_eq!(t.n_rows(), 5);
        assert_eq!(t.rows()[0][2].as_deref(), Some("Allen, Miss. Elisabeth"));
        assert_eq!(t.rows()[1][4], None);
    }

    #[test]
    fn ragged_row_names_its_line() {
        let err = table("a,b\n1,2\n3\n").unwrap_err();
        match err {
            Error::Csv { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_header_rejected() {
        assert!(matches!(table("a,b,a\n1,2,3\n"), Err(Error::Csv { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_csv("/definitely/not/here.csv").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.is_data_error());
    }

    #[test]
    fn titanic_preparation() {
        let d = prepare_titanic(&table(TITANIC).unwrap()).unwrap();
        assert_eq!(d.n_features(), 9);
        assert_eq!(d.class_counts(), vec![3, 2]);
        // Age median of 29, 42, 36, 27 is 32.5.
        assert_eq!(d.value(1, FeatureId(2)), 32.5);
        assert_eq!(d.value(0, FeatureId(2)), 29.0);
        // Fare median of 211.3375, 151.55, 7.55, 26 is 88.775.
        assert!((d.value(4, FeatureId(5)) - 88.775).abs() < 1e-12);
        assert_eq!(d.value(1, FeatureId(1)), 1.0);
        assert_eq!(d.value(0, FeatureId(1)), 0.0);
        // Cherbourg row, then the missing port filled with the mode S.
        assert_eq!((6..9).map(|f| d.value(1, FeatureId(f))).collect::<Vec<_>>(), [1.0, 0.0, 0.0]);
        assert_eq!((6..9).map(|f| d.value(2, FeatureId(f))).collect::<Vec<_>>(), [0.0, 0.0, 1.0]);
        assert_eq!(d.feature(FeatureId(1)).small_label, "female");
    }

    #[test]
    fn titanic_requires_columns() {
        let t = table("pclass,survived,sex\n1,1,female\n").unwrap();
        assert!(matches!(prepare_titanic(&t), Err(Error::Schema(_))));
    }

    #[test]
    fn boston_and_diabetes_shapes() {
        let header = "crim,zn,indus,chas,nox,rm,age,dis,rad,tax,ptratio,black,lstat,medv";
        let rows: String = (0..12)
            .map(|i| {
                let v: Vec<String> = (0..13).map(|j| format!("{}", i * 13 + j)).collect();
                format!("{},{}\n", v.join(","), 10 + i)
            })
            .collect();
        let b = prepare_boston(&table(&format!("{header}\n{rows}")).unwrap()).unwrap();
        assert_eq!(b.n_features(), 12);
        assert!(b.features().iter().all(|f| f.name != "BLACK"));
        assert_eq!(b.class_counts(), vec![6, 6]);

        let flat = format!("{header}\n{}", "1,1,1,1,1,1,1,1,1,1,1,1,1,5\n".repeat(4));
        assert!(prepare_boston(&table(&flat).unwrap()).is_err());

        let header = "AGE,SEX,BMI,BP,S1,S2,S3,S4,S5,S6,Y";
        let rows = "59,2,32.1,101,157,93.2,38,4,4.8598,87,151\n48,1,21.6,87,183,103.2,70,3,3.8918,69,75\n";
        let d = prepare_diabetes(&table(&format!("{header}\n{rows}")).unwrap()).unwrap();
        assert_eq!(d.n_features(), 10);
        assert_eq!(d.feature(FeatureId(8)).name, "LTG");
        assert_eq!(d.value(0, FeatureId(1)), 2.0);
        assert_eq!(d.labels(), &[1, 0]);
    }

    fn toy(n: usize) -> Dataset {
        Dataset::new(
            vec![FeatureInfo::new("x")],
            vec![(0..n).map(|i| i as f64).collect()],
            (0..n).map(|i| i % 2).collect(),
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn split_sizes_and_partition() {
        let d = toy(1309);
        let (tr, va) = split_train_val(&d, SplitSpec::new(3)).unwrap();
        assert_eq!((tr.n_rows(), va.n_rows()), (916, 393));
        let mut all: Vec<f64> = tr.column(FeatureId(0)).iter().chain(va.column(FeatureId(0))).copied().collect();
        all.sort_by(f64::total_cmp);
        assert_eq!(all, d.column(FeatureId(0)));
        let (tr2, _) = split_train_val(&d, SplitSpec::new(4)).unwrap();
        assert_ne!(tr.column(FeatureId(0)), tr2.column(FeatureId(0)));
        assert!(split_train_val(&toy(9), SplitSpec::new(0)).is_err());
    }

    #[test]
    fn noise_columns() {
        let d = toy(50);
        assert_eq!(add_noise_features(&d, NoiseSpec { count: 0, seed: 1 }).unwrap(), d);
        let a = add_noise_features(&d, NoiseSpec { count: 3, seed: 1 }).unwrap();
        let b = add_noise_features(&d, NoiseSpec { count: 3, seed: 1 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_features(), 4);
        assert_eq!(a.feature(FeatureId(3)).name, "Noise 3");
        assert_eq!(a.noise_features().indices(), vec![1, 2, 3]);
        assert!(a.column(FeatureId(1)).iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn dataset_ids() {
        assert_eq!("Boston".parse::<DatasetId>().unwrap(), DatasetId::Boston);
        assert!("iris".parse::<DatasetId>().is_err());
    }
}
