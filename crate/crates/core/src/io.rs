//! Serialization of immersed patches and diagnostic reports.
//!
//! Immersions are stored as JSON documents carrying the grid header and the
//! nodal positions. JSON floats are written in shortest-round-trip form, so a
//! save/load cycle reproduces every coordinate bitwise. Reports (anything
//! `Serialize`) go through [`write_json`]; per-node boundary traces can be
//! dumped as plain CSV columns with [`write_csv`].

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::ParamGrid;
use crate::math::{vec3, Vec3};
use crate::surface::Immersion;

/// On-disk form of a discrete immersion: grid header plus row-major nodal
/// positions. The analytic map, when present in memory, is intentionally not
/// stored; a loaded immersion is purely discrete.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImmersionFile {
    pub name: String,
    pub nx: usize,
    pub ny: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub positions: Vec<[f64; 3]>,
}

impl ImmersionFile {
    pub fn from_immersion(im: &Immersion) -> ImmersionFile {
        ImmersionFile {
            name: im.name.clone(),
            nx: im.grid.nx,
            ny: im.grid.ny,
            x_range: im.grid.x_range,
            y_range: im.grid.y_range,
            positions: im.positions.iter().map(|p| [p.x, p.y, p.z]).collect(),
        }
    }

    pub fn into_immersion(self) -> Result<Immersion> {
        let grid = ParamGrid::new(self.nx, self.ny, self.x_range, self.y_range)?;
        let positions: Vec<Vec3> = self
            .positions
            .into_iter()
            .map(|[x, y, z]| vec3(x, y, z))
            .collect();
        Immersion::from_positions(grid, positions, self.name)
    }
}

/// Write an immersion to `path` as JSON.
pub fn save_immersion(path: &Path, im: &Immersion) -> Result<()> {
    write_json(path, &ImmersionFile::from_immersion(im))
}

/// Load an immersion previously written by [`save_immersion`]. The result has
/// no analytic map attached, so derivative schemes that need exact jets will
/// report `JetUnavailable`.
pub fn load_immersion(path: &Path) -> Result<Immersion> {
    let text = fs::read_to_string(path)?;
    let file: ImmersionFile = serde_json::from_str(&text)?;
    file.into_immersion()
}

/// Serialize any report as pretty-printed JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text)?;
    Ok(())
}

/// Write equal-length columns as CSV with a header row.
pub fn write_csv(path: &Path, headers: &[&str], columns: &[Vec<f64>]) -> Result<()> {
    if headers.len() != columns.len() {
        return Err(Error::Invalid(format!(
            "{} headers for {} columns",
            headers.len(),
            columns.len()
        )));
    }
    let rows = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != rows) {
        return Err(Error::Invalid("csv columns differ in length".into()));
    }
    let mut out = fs::File::create(path)?;
    writeln!(out, "{}", headers.join(","))?;
    for r in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| format!("{}", c[r])).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{gallery_surface, GalleryId};
    use std::path::PathBuf;

    fn temp_path(tag: &str) -> PathBuf {
        std::env::temp_dir().join(format!("freewill-io-{}-{}", std::process::id(), tag))
    }

    #[test]
    fn immersion_round_trip_is_bitwise_exact() {
        let im = gallery_surface(GalleryId::Hemisphere).immersion_on(17, 9).unwrap();
        let path = temp_path("roundtrip.json");
        save_immersion(&path, &im).unwrap();
        let back = load_immersion(&path).unwrap();
        fs::remove_file(&path).unwrap();

        assert_eq!(back.name, im.name);
        assert_eq!(back.grid.nx, im.grid.nx);
        assert_eq!(back.grid.ny, im.grid.ny);
        assert_eq!(back.grid.x_range, im.grid.x_range);
        assert_eq!(back.grid.y_range, im.grid.y_range);
        assert_eq!(back.positions.len(), im.positions.len());
        for (a, b) in back.positions.iter().zip(&im.positions) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
            assert_eq!(a.z.to_bits(), b.z.to_bits());
        }
        assert!(back.map.is_none(), "loaded immersions are purely discrete");
    }

    #[test]
    fn corrupt_and_inconsistent_files_are_rejected() {
        let path = temp_path("corrupt.json");
        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(load_immersion(&path), Err(Error::Json(_))));

        let bad = ImmersionFile {
            name: "bad".into(),
            nx: 5,
            ny: 5,
            x_range: (0.0, 1.0),
            y_range: (0.0, 1.0),
            positions: vec![[0.0; 3]; 7],
        };
        write_json(&path, &bad).unwrap();
        assert!(matches!(load_immersion(&path), Err(Error::Invalid(_))));
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn csv_checks_column_shapes() {
        let path = temp_path("cols.csv");
        write_csv(&path, &["s", "kappa"], &[vec![0.0, 1.0], vec![2.0, 3.0]]).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::remove_file(&path).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(text.lines().next().unwrap(), "s,kappa");

        let err = write_csv(&path, &["a"], &[vec![0.0], vec![1.0]]);
        assert!(matches!(err, Err(Error::Invalid(_))));
        let err = write_csv(&path, &["a", "b"], &[vec![0.0], vec![1.0, 2.0]]);
        assert!(matches!(err, Err(Error::Invalid(_))));
    }
}
