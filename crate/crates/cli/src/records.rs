//! Result rows and their CSV/JSON encodings.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use metakappa_core::presentation::PresentationParams;
use metakappa_core::set::ElementSet;

/// One `(group, r, s)` result. The schema (field names and order) is
/// stable: `m,n_exp,g,h,r,s,kappa,dkappa,nkappa,mu,status,witness_a,witness_b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub m: u32,
    pub n_exp: u32,
    pub g: u32,
    pub h: u32,
    pub r: u32,
    pub s: u32,
    pub kappa: u32,
    pub dkappa: u32,
    pub nkappa: u32,
    pub mu: u32,
    pub status: String,
    /// Elements as `i.j` pairs, comma-separated, ascending by element
    /// index; empty when witnesses were not requested.
    pub witness_a: String,
    pub witness_b: String,
}

impl ResultRecord {

    pub fn cell_key(&self) -> (u32, u32, u32, u32, u32, u32) {
        (self.m, self.n_exp, self.g, self.h, self.r, self.s)
    }
}

/// Encode a set as `i.j` pairs sorted by element index.
pub fn encode_set(params: &PresentationParams, set: &ElementSet) -> String {
    set.iter()
        .map(|idx| {
            let e = params.element_at(idx);
            format!("{}.{}", e.i(), e.j())
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse the `i.j,i.j,…` encoding back into a set.
pub fn decode_set(params: &PresentationParams, text: &str) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    if text.is_empty() {
        return Ok(set);
    }
    for part in text.split(',') {
        let (i, j) = part
            .split_once('.')
            .with_context(|| format!("element `{part}` is not of the form i.j"))?;
        let (i, j): (u32, u32) = (i.parse()?, j.parse()?);
        if i >= params.m() || j >= params.n_exp() {
            bail!("element {i}.{j} is out of range for {params:?}");
        }
        set.insert(params.index_of(params.element(i, j)));
    }
    Ok(set)
}

pub fn write_csv(records: &[ResultRecord], out: &mut impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for record in records {
        w.serialize(record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(records: &[ResultRecord], out: &mut impl std::io::Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, records)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use metakappa_core::presentation::kmn_params;

    #[test]
    fn set_encoding_round_trip() {
        let params = kmn_params(3, 3, 0).unwrap().params;
        let set: ElementSet = [0, 4, 17].into_iter().collect();
        let text = encode_set(&params, &set);
        assert_eq!(text, "0.0,1.1,2.5");
        assert_eq!(decode_set(&params, &text).unwrap(), set);
        assert!(decode_set(&params, "").unwrap().is_empty());
        assert!(decode_set(&params, "7.0").is_err());
    }

    #[test]
    fn csv_header_is_stable() {
        let record = ResultRecord {
            m: 3,
            n_exp: 2,
            g: 0,
            h: 2,
            r: 1,
            s: 1,
            kappa: 1,
            dkappa: 1,
            nkappa: 1,
            mu: 1,
            status: "optimal".into(),
            witness_a: String::new(),
            witness_b: String::new(),
        };
        let mut buf = Vec::new();
        write_csv(&[record], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "m,n_exp,g,h,r,s,kappa,dkappa,nkappa,mu,status,witness_a,witness_b\n"
        ));
    }
}
