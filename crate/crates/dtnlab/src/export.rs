//! CSV and OBJ writers and the CSV loader behind `tablefile:` potentials.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use dtnlab_core::geometry::mesh::Mesh;

use crate::cli::Cli;
use crate::report::{Report, Table};

pub fn write_csv(path: &Path, table: &Table) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_obj(path: &Path, mesh: &Mesh) -> Result<()> {
    let mut out = std::io::BufWriter::new(
        fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
    );
    writeln!(out, "# dtnlab {}", dtnlab_core::VERSION)?;
    for v in &mesh.vertices {
        writeln!(out, "v {:.9} {:.9} {:.9}", v[0], v[1], v[2])?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    out.flush()?;
    Ok(())
}

/// Write `<command>.json` and, as requested, `<command>_<table>.csv` and `<command>.obj`.
pub fn write_artifacts(dir: &Path, cli: &Cli, report: &Report, json: &str) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let stem = cli.command.name();
    let mut files = Vec::new();
    let path = dir.join(format!("{stem}.json"));
    fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
    files.push(path);
    if cli.output.csv {
        for t in &report.tables {
            let path = dir.join(format!("{stem}_{}.csv", t.name));
            write_csv(&path, t)?;
            files.push(path);
        }
    }
    if cli.output.obj {
        if let Some(mesh) = &report.mesh {
            let path = dir.join(format!("{stem}.obj"));
            write_obj(&path, mesh)?;
            files.push(path);
        }
    }
    Ok(files)
}

/// `(r, value)` rows of a CSV file. A non-numeric first row is taken as a
/// header; `#` starts a comment line.
pub fn load_table(path: &str) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("opening table {path}"))?;
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() < 2 {
            bail!("{path}: row {} has fewer than two columns", i + 1);
        }
        match (rec[0].parse::<f64>(), rec[1].parse::<f64>()) {
            (Ok(r), Ok(v)) => rows.push((r, v)),
            _ if i == 0 => continue,
            _ => bail!("{path}: row {} is not numeric", i + 1),
        }
    }
    Ok(rows)
}

/// Loader for the core parsers; failures surface as parse errors.
pub fn table_loader(path: &str) -> dtnlab_core::Result<Vec<(f64, f64)>> {
    load_table(path).map_err(|e| dtnlab_core::Error::Parse {
        input: format!("tablefile:{path}"),
        reason: format!("{e:#}"),
    })
}
