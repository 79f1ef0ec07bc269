//! Dictionary-encoded categorical datasets.
//!
//! Every attribute value is mapped to a dense integer code in first-seen
//! order, so code `c` of attribute `j` is the `c`-th distinct token met while
//! reading column `j` top to bottom. Row order is exactly the file order;
//! downstream tie-breaking depends on it.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kmodes::Assignment;

/// Encoded attribute value.
pub type Code = u32;

/// How to read a delimited categorical file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Schema {
    /// Field separator.
    pub delimiter: char,
    /// Zero-based index of the class column, if the file has one.
    pub class_column: Option<usize>,
    /// Zero-based indices of columns to drop entirely (identifiers and the like).
    pub ignore_columns: Vec<usize>,
    /// Token marking a missing value. It is kept as an ordinary category;
    /// empty fields are normalized to it.
    pub missing: String,
    /// Whether the first line is a header naming the columns.
    pub header: bool,
}

impl Default for Schema {
    fn default() -> Self {
        Self {
            delimiter: ',',
            class_column: None,
            ignore_columns: Vec::new(),
            missing: "?".to_string(),
            header: false,
        }
    }
}

/// Ground-truth class labels with their own dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    codes: Vec<Code>,
    classes: Vec<String>,
}

impl Labels {
    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    /// Raw class names; position is the class code.
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Number of objects per class code.
    pub fn distribution(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &c in &self.codes {
            counts[c as usize] += 1;
        }
        counts
    }
}

/// An n-by-m matrix of attribute codes plus the dictionaries that decode it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    codes: Vec<Code>,
    n: usize,
    m: usize,
    dictionaries: Vec<Vec<String>>,
    attribute_names: Option<Vec<String>>,
    labels: Option<Labels>,
}

/// Incrementally assigns first-seen codes to raw tokens.
#[derive(Default)]
struct Encoder {
    index: HashMap<String, Code>,
    values: Vec<String>,
}

impl Encoder {
    fn encode(&mut self, token: &str) -> Code {
        if let Some(&code) = self.index.get(token) {
            return code;
        }
        let code = self.values.len() as Code;
        self.index.insert(token.to_string(), code);
        self.values.push(token.to_string());
        code
    }
}

/// Reads a delimited categorical file according to `schema`.
pub fn load_dataset(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(&text, schema, path)
}

/// Parses delimited text; `origin` is only used in error messages.
pub fn parse_dataset(text: &str, schema: &Schema, origin: &Path) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let header = if schema.header {
        lines.next().map(|(_, l)| split_fields(l, schema.delimiter))
    } else {
        None
    };

    let mut width = header.as_ref().map(Vec::len);
    let mut attr_columns: Vec<usize> = Vec::new();
    let mut encoders: Vec<Encoder> = Vec::new();
    let mut class_encoder = Encoder::default();
    let mut class_codes = Vec::new();
    let mut codes = Vec::new();
    let mut n = 0;

    for (line_no, line) in lines {
        let fields = split_fields(line, schema.delimiter);
        let expected = match width {
            Some(w) => w,
            None => {
                width = Some(fields.len());
                fields.len()
            }
        };
        if fields.len() != expected {
            return Err(Error::RaggedRow {
                path: origin.to_path_buf(),
                line: line_no,
                expected,
                found: fields.len(),
            });
        }
        if attr_columns.is_empty() {
            attr_columns = attribute_columns(expected, schema)?;
            encoders = attr_columns.iter().map(|_| Encoder::default()).collect();
        }
        for (enc, &col) in encoders.iter_mut().zip(&attr_columns) {
            codes.push(enc.encode(normalize(fields[col], &schema.missing)));
        }
        if let Some(col) = schema.class_column {
            class_codes.push(class_encoder.encode(normalize(fields[col], &schema.missing)));
        }
        n += 1;
    }

    if n == 0 {
        return Err(Error::EmptyInput(origin.to_path_buf()));
    }

    let attribute_names = header.map(|h| {
        attr_columns
            .iter()
            .map(|&c| h[c].to_string())
            .collect::<Vec<_>>()
    });
    let labels = schema.class_column.map(|_| Labels {
        codes: class_codes,
        classes: class_encoder.values,
    });

    Ok(Dataset {
        codes,
        n,
        m: attr_columns.len(),
        dictionaries: encoders.into_iter().map(|e| e.values).collect(),
        attribute_names,
        labels,
    })
}

fn split_fields(line: &str, delimiter: char) -> Vec<&str> {
    line.split(delimiter).map(str::trim).collect()
}

fn normalize<'a>(field: &'a str, missing: &'a str) -> &'a str {
    if field.is_empty() {
        missing
    } else {
        field
    }
}

fn attribute_columns(width: usize, schema: &Schema) -> Result<Vec<usize>> {
    if let Some(c) = schema.class_column {
        if c >= width {
            return Err(Error::Schema(format!(
                "class column {c} out of range for {width} columns"
            )));
        }
    }
    if let Some(&c) = schema.ignore_columns.iter().find(|&&c| c >= width) {
        return Err(Error::Schema(format!(
            "ignored column {c} out of range for {width} columns"
        )));
    }
    let cols: Vec<usize> = (0..width)
        .filter(|c| Some(*c) != schema.class_column && !schema.ignore_columns.contains(c))
        .collect();
    if cols.is_empty() {
        return Err(Error::Schema("no attribute columns left".into()));
    }
    Ok(cols)
}

impl Dataset {
    /// Builds a dataset directly from code rows. Dictionaries hold the decimal
    /// rendering of each code, so `p_j` is one more than the largest code seen
    /// in column `j`.
    pub fn from_codes(rows: &[Vec<Code>], labels: Option<Vec<Code>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput(PathBuf::from("<memory>")));
        }
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::Schema("rows have no attributes".into()));
        }
        let mut domain = vec![0usize; m];
        let mut codes = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::Dimension {
                    expected: m,
                    found: row.len(),
                });
            }
            for (d, &c) in domain.iter_mut().zip(row) {
                *d = (*d).max(c as usize + 1);
            }
            codes.extend_from_slice(row);
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::Dimension {
                    expected: n,
                    found: l.len(),
                })
            }
            Some(l) => {
                let classes = l.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
                Some(Labels {
                    codes: l,
                    classes: (0..classes).map(|c| c.to_string()).collect(),
                })
            }
            None => None,
        };
        Ok(Self {
            codes,
            n,
            m,
            dictionaries: domain
                .into_iter()
                .map(|p| (0..p).map(|c| c.to_string()).collect())
                .collect(),
            attribute_names: None,
            labels,
        })
    }

    /// Number of objects.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of attributes.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[Code] {
        &self.codes[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[Code]> + '_ {
        self.codes.chunks_exact(self.m)
    }

    pub fn dictionaries(&self) -> &[Vec<String>] {
        &self.dictionaries
    }

    /// Domain size `p_j` of attribute `j`.
    pub fn domain_size(&self, attr: usize) -> usize {
        self.dictionaries[attr].len()
    }

    pub fn attribute_names(&self) -> Option<&[String]> {
        self.attribute_names.as_deref()
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Raw token for `code` of attribute `attr`.
    pub fn value(&self, attr: usize, code: Code) -> &str {
        &self.dictionaries[attr][code as usize]
    }

    /// Raw tokens of row `i`.
    pub fn decode_row(&self, i: usize) -> Vec<&str> {
        self.row(i)
            .iter()
            .enumerate()
            .map(|(j, &c)| self.value(j, c))
            .collect()
    }

    /// Number of distinct row vectors.
    pub fn distinct_rows(&self) -> usize {
        let mut seen: std::collections::HashSet<&[Code]> = Default::default();
        self.rows().filter(|r| seen.insert(r)).count()
    }

    /// Counts over every row; one pass over the data.
    pub fn global_frequency_table(&self) -> FrequencyTable {
        let mut table = FrequencyTable::zeroed(self);
        for row in self.rows() {
            table.add_row(row);
        }
        table
    }

    /// Counts over the rows assigned to `cluster`.
    pub fn cluster_frequency_table(
        &self,
        assignment: &Assignment,
        cluster: usize,
    ) -> Result<FrequencyTable> {
        if cluster >= assignment.k() {
            return Err(Error::Bounds {
                index: cluster,
                k: assignment.k(),
            });
        }
        self.check_assignment(assignment)?;
        let mut table = FrequencyTable::zeroed(self);
        for (row, &c) in self.rows().zip(assignment.clusters()) {
            if c == cluster {
                table.add_row(row);
            }
        }
        Ok(table)
    }

    /// One table per cluster, built in a single pass.
    pub fn cluster_frequency_tables(&self, assignment: &Assignment) -> Result<Vec<FrequencyTable>> {
        self.check_assignment(assignment)?;
        let mut tables = vec![FrequencyTable::zeroed(self); assignment.k()];
        for (row, &c) in self.rows().zip(assignment.clusters()) {
            tables[c].add_row(row);
        }
        Ok(tables)
    }

    pub(crate) fn check_assignment(&self, assignment: &Assignment) -> Result<()> {
        if assignment.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: assignment.len(),
            });
        }
        Ok(())
    }
}

/// Per-attribute occurrence counts, indexed by code.
///
/// Codes are dense, so each attribute's table is a plain vector of length
/// `p_j` rather than a hash map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<Vec<usize>>,
    rows: usize,
}

impl FrequencyTable {
    fn zeroed(ds: &Dataset) -> Self {
        Self {
            counts: ds.dictionaries.iter().map(|d| vec![0; d.len()]).collect(),
            rows: 0,
        }
    }

    fn add_row(&mut self, row: &[Code]) {
        for (attr, &c) in self.counts.iter_mut().zip(row) {
            attr[c as usize] += 1;
        }
        self.rows += 1;
    }

    /// Number of rows the table was built from.
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn attributes(&self) -> usize {
        self.counts.len()
    }

    /// Occurrences of `code` in attribute `attr`; zero for unseen codes.
    pub fn count(&self, attr: usize, code: Code) -> usize {
        self.counts[attr].get(code as usize).copied().unwrap_or(0)
    }

    /// Counts of attribute `attr`, indexed by code.
    pub fn attribute(&self, attr: usize) -> &[usize] {
        &self.counts[attr]
    }

    /// Most frequent code of `attr`, lowest code on ties; `None` when the
    /// table is empty.
    pub fn mode(&self, attr: usize) -> Option<Code> {
        let mut best: Option<(Code, usize)> = None;
        for (code, &count) in self.counts[attr].iter().enumerate() {
            if count > 0 && best.is_none_or(|(_, b)| count > b) {
                best = Some((code as Code, count));
            }
        }
        best.map(|(c, _)| c)
    }

    /// True when the table's shape matches the dataset's dictionaries.
    pub fn matches(&self, ds: &Dataset) -> bool {
        self.counts.len() == ds.m()
            && self
                .counts
                .iter()
                .zip(ds.dictionaries())
                .all(|(c, d)| c.len() == d.len())
    }
}
