//! Table rendering: CSV with a header row, or a JSON document with one
//! object per row. Floats are printed with 15 significant digits and a `.`
//! decimal separator so identical invocations produce identical bytes.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    UInt(u128),
    Float(f64),
    Text(String),
}

#[derive(Clone, Debug)]
pub struct Table {
    command: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(cell_text).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(&col, cell)| (col.to_string(), cell_json(cell)))
                    .collect();
                serde_json::Value::Object(map)
            })
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "rows": rows,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("table serialization");
        out.push('\n');
        out
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::UInt(v) => v.to_string(),
        Cell::Float(v) => fmt_g15(*v),
        Cell::Text(v) => v.clone(),
    }
}

fn cell_json(cell: &Cell) -> serde_json::Value {
    match cell {
        Cell::UInt(v) => match u64::try_from(*v) {
            Ok(small) => serde_json::Value::from(small),
            Err(_) => serde_json::Value::from(v.to_string()),
        },
        Cell::Float(v) => serde_json::Value::from(*v),
        Cell::Text(v) => serde_json::Value::from(v.clone()),
    }
}

/// `%.15g`-style formatting: 15 significant digits, trailing zeros trimmed,
/// scientific notation outside the fixed-point range.
pub fn fmt_g15(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if exp < -4 || exp >= 15 {
        let s = format!("{:.14e}", v);
        let (mantissa, exponent) = s.split_once('e').expect("exponent marker");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}
