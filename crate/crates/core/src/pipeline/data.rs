use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};
use crate::measures::{Dataset, Group, ScoredExample};

pub const HEADER: [&str; 4] = ["id", "score", "group", "label"];

fn parse_error(row: usize, column: &str, reason: &str) -> Error {
    Error::Parse {
        row,
        column: column.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_binary(raw: &str, row: usize, column: &str) -> Result<u8> {
    match raw {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(parse_error(row, column, "must be 0 or 1")),
    }
}

/// Reads `id,score,group,label` rows. Rows are numbered from 1, header excluded.
pub fn parse_dataset<R: Read>(input: R) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::Parse {
            row: 0,
            column: "header".into(),
            reason: format!("must be `{}`", HEADER.join(",")),
        });
    }

    let mut examples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record?;
        let field = |index: usize| -> Result<&str> {
            match record.get(index) {
                Some(v) if !v.is_empty() => Ok(v),
                _ => Err(parse_error(row, HEADER[index], "missing")),
            }
        };
        let id = field(0)?;
        let score: f64 = field(1)?
            .parse()
            .map_err(|_| parse_error(row, "score", "is not a number"))?;
        if !(0.0..=1.0).contains(&score) {
            return Err(parse_error(row, "score", "out of range"));
        }
        let group =
            Group::from_index(parse_binary(field(2)?, row, "group")?).expect("binary group index");
        let label = parse_binary(field(3)?, row, "label")? == 1;
        if record.len() > HEADER.len() {
            return Err(parse_error(row, "record", "has extra columns"));
        }
        examples.push(ScoredExample::new(id, score, group, label)?);
    }
    Dataset::new(examples)
}

/// Writes a dataset in the format read by [`parse_dataset`].
pub fn write_dataset(dataset: &Dataset) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for e in dataset.iter() {
        writeln!(
            out,
            "{},{},{},{}",
            e.id(),
            e.score(),
            e.group().index(),
            u8::from(e.label())
        )
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Dataset> {
        parse_dataset(text.as_bytes())
    }

    #[test]
    fn parses_rows_in_order() {
        let ds = parse("id,score,group,label\na1,0.73,0,1\nb2,0.1,1,0\n").unwrap();
        let first = &ds.examples()[0];
        assert_eq!(first.id(), "a1");
        assert_eq!(first.score(), 0.73);
        assert_eq!(first.group(), Group::Zero);
        assert!(first.label());
        assert_eq!(ds.examples()[1].id(), "b2");
    }

    #[test]
    fn reports_row_and_column() {
        let err = parse("id,score,group,label\na1,0.73,0,1\na2,1.2,0,1\n").unwrap_err();
        assert_eq!(err.to_string(), "score out of range at row 2");
        let err = parse("id,score,group,label\na1,abc,0,1\n").unwrap_err();
        assert_eq!(err.to_string(), "score is not a number at row 1");
        let err = parse("id,score,group,label\na1,0.5,2,1\n").unwrap_err();
        assert_eq!(err.to_string(), "group must be 0 or 1 at row 1");
        let err = parse("id,score,group,label\na1,0.5,1,1\na2,0.5,0\n").unwrap_err();
        assert_eq!(err.to_string(), "label missing at row 2");
        assert!(parse("id,score,label,group\na1,0.5,1,1\n").is_err());
    }

    #[test]
    fn rejects_single_group() {
        let err = parse("id,score,group,label\na1,0.7,0,1\na2,0.2,0,0\n").unwrap_err();
        assert_eq!(err.to_string(), "group 1 absent");
    }

    #[test]
    fn round_trips() {
        let text = "id,score,group,label\na,0.1,0,1\nb,0.30000000000000004,1,0\nc,1,1,1\n";
        let ds = parse(text).unwrap();
        assert_eq!(parse(&write_dataset(&ds)).unwrap(), ds);
    }
}
