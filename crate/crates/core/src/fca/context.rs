use std::collections::HashMap;
use std::io::{Read, Write};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A binary object × attribute incidence relation.
///
/// Rows and columns are both stored as bitsets so that either derivation
/// operator is a run of word-wise ANDs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
    /// `rows[g]` is the attribute set `{g}'`.
    rows: Vec<FixedBitSet>,
    /// `cols[m]` is the object set `{m}'`.
    cols: Vec<FixedBitSet>,
}

fn index_labels(labels: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if index.insert(label.clone(), i).is_some() {
            return Err(Error::invalid(format!("duplicate {what} label {label:?}")));
        }
    }
    Ok(index)
}

impl FormalContext {
    /// Builds a context from a dense row-major incidence matrix.
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: &[Vec<bool>]) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::invalid(format!(
                "incidence has {} rows but there are {} objects",
                incidence.len(),
                objects.len()
            )));
        }
        let mut pairs = Vec::new();
        for (g, row) in incidence.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::invalid(format!(
                    "incidence row {g} has {} columns but there are {} attributes",
                    row.len(),
                    attributes.len()
                )));
            }
            pairs.extend(row.iter().enumerate().filter(|(_, &b)| b).map(|(m, _)| (g, m)));
        }
        Self::from_pairs(objects, attributes, pairs)
    }

    /// Builds a context from `(object, attribute)` index pairs.
    pub fn from_pairs(
        objects: Vec<String>,
        attributes: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let object_index = index_labels(&objects, "object")?;
        let attribute_index = index_labels(&attributes, "attribute")?;
        let (n, k) = (objects.len(), attributes.len());
        let mut rows = vec![FixedBitSet::with_capacity(k); n];
        let mut cols = vec![FixedBitSet::with_capacity(n); k];
        for (g, m) in pairs {
            if g >= n || m >= k {
                return Err(Error::invalid(format!("incidence pair ({g}, {m}) out of range for a {n}x{k} context")));
            }
            rows[g].insert(m);
            cols[m].insert(g);
        }
        Ok(Self { objects, attributes, object_index, attribute_index, rows, cols })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// The attribute set `{g}'` of one object.
    pub fn row(&self, object: usize) -> &FixedBitSet {
        &self.rows[object]
    }

    /// The object set `{m}'` of one attribute.
    pub fn column(&self, attribute: usize) -> &FixedBitSet {
        &self.cols[attribute]
    }

    pub fn all_objects(&self) -> FixedBitSet {
        full_set(self.n_objects())
    }

    pub fn all_attributes(&self) -> FixedBitSet {
        full_set(self.n_attributes())
    }

    pub fn object_id(&self, label: &str) -> Result<usize> {
        self.object_index.get(label).copied().ok_or_else(|| Error::invalid(format!("unknown object {label:?}")))
    }

    pub fn attribute_id(&self, label: &str) -> Result<usize> {
        self.attribute_index.get(label).copied().ok_or_else(|| Error::invalid(format!("unknown attribute {label:?}")))
    }

    /// Resolves object labels to an object set.
    pub fn object_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(self.n_objects());
        for l in labels {
            set.insert(self.object_id(l.as_ref())?);
        }
        Ok(set)
    }

    /// Resolves attribute labels to an attribute set.
    pub fn attribute_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(self.n_attributes());
        for l in labels {
            set.insert(self.attribute_id(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn object_labels(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|g| self.objects[g].as_str()).collect()
    }

    pub fn attribute_labels(&self, set: &FixedBitSet) -> Vec<&str> {
        set.ones().map(|m| self.attributes[m].as_str()).collect()
    }

    /// `A'`: the attributes shared by every object of `A`. `∅'` is every attribute.
    pub fn derive_extent(&self, objects: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_attributes();
        for g in objects.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// `B'`: the objects having every attribute of `B`. `∅'` is every object.
    pub fn derive_intent(&self, attributes: &FixedBitSet) -> FixedBitSet {
        let mut out = self.all_objects();
        for m in attributes.ones() {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    /// `B''` for an attribute set.
    pub fn closure_intent(&self, attributes: &FixedBitSet) -> FixedBitSet {
        self.derive_extent(&self.derive_intent(attributes))
    }

    /// `A''` for an object set.
    pub fn closure_extent(&self, objects: &FixedBitSet) -> FixedBitSet {
        self.derive_intent(&self.derive_extent(objects))
    }

    /// Writes the context as a 0/1 table: a header row of attribute labels
    /// (first cell empty), then one row per object led by its label.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec![""];
        header.extend(self.attributes.iter().map(String::as_str));
        w.write_record(&header)?;
        for (g, label) in self.objects.iter().enumerate() {
            let mut record = vec![label.as_str()];
            record.extend((0..self.n_attributes()).map(|m| if self.incident(g, m) { "1" } else { "0" }));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the table format produced by [`FormalContext::write_csv`].
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(reader);
        let mut records = r.records();
        let header = records.next().ok_or_else(|| Error::invalid("context table is empty"))??;
        let attributes: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let mut objects = Vec::new();
        let mut pairs = Vec::new();
        for record in records {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            if record.len() != attributes.len() + 1 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {} cells, found {}", attributes.len() + 1, record.len()),
                });
            }
            let g = objects.len();
            objects.push(record[0].to_owned());
            for (m, cell) in record.iter().skip(1).enumerate() {
                match cell {
                    "1" => pairs.push((g, m)),
                    "0" => {}
                    other => {
                        return Err(Error::Parse { line, message: format!("cell must be 0 or 1, found {other:?}") })
                    }
                }
            }
        }
        Self::from_pairs(objects, attributes, pairs)
    }
}

pub(crate) fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}
