//! The versioned JSON form of an extended EL-chart.

use adlv_core::{ELChart, ExtendedELChart, GCocharacter, IndexedInt, SuperbasicDatum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

/// Serialized chart: generators `B` as `[tau, value]` and the stored `phi`
/// values on `A_low` as `[[tau, value], phi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDocument {
    pub schema_version: String,
    pub d: usize,
    pub h: usize,
    pub slopes: Vec<i64>,
    #[serde(rename = "B")]
    pub generators: Vec<(usize, i64)>,
    pub phi: Vec<((usize, i64), i64)>,
}

impl ChartDocument {
    pub fn from_chart(ext: &ExtendedELChart) -> Self {
        let chart = ext.chart();
        let generators = (0..chart.d())
            .flat_map(|tau| chart.generators(tau).iter().map(move |&b| (tau, b)))
            .collect();
        let phi = ext
            .low_entries()
            .into_iter()
            .map(|(a, v)| ((a.tau.0, a.value), v))
            .collect();
        ChartDocument {
            schema_version: SCHEMA_VERSION.into(),
            d: chart.d(),
            h: chart.h(),
            slopes: chart.datum().slopes().to_vec(),
            generators,
            phi,
        }
    }

    /// Rebuilds the chart and checks normalization and every axiom.
    pub fn to_chart(&self) -> CliResult<ExtendedELChart> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema version {:?}",
                self.schema_version
            )));
        }
        let datum = SuperbasicDatum::new(self.d, self.h, self.slopes.clone())?;
        let mut generators = vec![Vec::new(); self.d];
        for &(tau, b) in &self.generators {
            generators
                .get_mut(tau)
                .ok_or_else(|| CliError::Input(format!("generator component {tau} out of range")))?
                .push(b);
        }
        let chart = ELChart::new(datum, generators)?;
        if !chart.is_normalized() {
            return Err(CliError::Input("chart is not normalized".into()));
        }
        let entries: Vec<(IndexedInt, i64)> = self
            .phi
            .iter()
            .map(|&((tau, a), v)| (IndexedInt::new(tau, a), v))
            .collect();
        if entries.iter().any(|(a, _)| a.tau.0 >= self.d) {
            return Err(CliError::Input("phi component out of range".into()));
        }
        let ext = ExtendedELChart::from_entries(chart, &entries)?;
        if let Some(v) = ext.validate().first() {
            return Err(CliError::Input(format!("chart fails validation: {v}")));
        }
        Ok(ext)
    }
}

/// One line of an enumeration stream: the chart plus derived facts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartLine {
    pub chart: ChartDocument,
    #[serde(rename = "type")]
    pub mu_prime: Vec<Vec<i64>>,
    pub hodge_point: Vec<Vec<i64>>,
    pub cyclic: bool,
    pub v_dim: usize,
}

impl ChartLine {
    pub fn new(ext: &ExtendedELChart) -> CliResult<Self> {
        Ok(ChartLine {
            chart: ChartDocument::from_chart(ext),
            mu_prime: ext.type_of().mu_prime.to_rows(),
            hodge_point: ext.hodge_point()?.to_rows(),
            cyclic: ext.is_cyclic(),
            v_dim: ext.v_dim(),
        })
    }

    /// Parses one line, rebuilds the chart and recomputes the derived facts.
    pub fn load(line: &str) -> CliResult<Self> {
        let stored: ChartLine = serde_json::from_str(line)?;
        let fresh = ChartLine::new(&stored.chart.to_chart()?)?;
        if fresh != stored {
            return Err(CliError::Input(
                "derived fields do not match the chart".into(),
            ));
        }
        Ok(stored)
    }

    pub fn hodge(&self) -> CliResult<GCocharacter> {
        Ok(GCocharacter::from_rows(&self.hodge_point)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chart lines always serialize")
    }
}

/// Every line of a JSON-lines stream, re-validated.
pub fn load_stream(text: &str) -> CliResult<Vec<ChartLine>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(ChartLine::load)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use adlv_core::enumerate_charts;

    fn charts(rows: &[Vec<i64>]) -> Vec<ExtendedELChart> {
        let mu = GCocharacter::from_rows(rows).unwrap();
        let datum = SuperbasicDatum::for_mu(&mu).unwrap();
        enumerate_charts(&mu, &datum).unwrap().charts
    }

    #[test]
    fn round_trip_is_lossless() {
        for ext in charts(&[vec![0, 1, 1, 3]])
            .iter()
            .chain(&charts(&[vec![0, 1, 2], vec![0, 0, 1]]))
        {
            let line = ChartLine::new(ext).unwrap();
            let text = line.to_json();
            let back = ChartLine::load(&text).unwrap();
            assert_eq!(back, line);
            assert_eq!(back.to_json(), text);
            assert_eq!(&back.chart.to_chart().unwrap(), ext);
        }
    }

    #[test]
    fn field_order_is_fixed() {
        let ext = &charts(&[vec![0, 1]])[0];
        let text = serde_json::to_string(&ChartDocument::from_chart(ext)).unwrap();
        assert_eq!(
            text,
            r#"{"schema_version":"1","d":1,"h":2,"slopes":[1],"B":[[0,0],[0,1]],"phi":[]}"#
        );
    }

    #[test]
    fn tampered_documents_are_rejected() {
        let ext = &charts(&[vec![0, 2, 3]])[0];
        let mut doc = ChartDocument::from_chart(ext);
        doc.generators[0].1 += 3;
        assert!(doc.to_chart().is_err());

        let line = ChartLine::new(ext).unwrap();
        let mut wrong = line.clone();
        wrong.v_dim += 1;
        assert!(ChartLine::load(&wrong.to_json()).is_err());

        let mut doc = line.chart.clone();
        doc.schema_version = "0".into();
        assert!(doc.to_chart().is_err());
        assert!(ChartLine::load("{\"chart\":1}").is_err());
    }
}
