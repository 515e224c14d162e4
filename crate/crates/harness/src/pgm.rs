//! 8-bit portable graymap images, ASCII (`P2`) and binary (`P5`).

use std::fs;
use std::path::Path;

use crate::error::{io_error, HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    /// Row-major samples in `0..=maxval`.
    pub pixels: Vec<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmFormat {
    Ascii,
    Binary,
}

impl GrayImage {
    /// Quantizes values in `[0, 1]` to 8 bits; values outside are clamped.
    pub fn from_unit(width: usize, height: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), width * height);
        let pixels = values
            .iter()
            .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u16)
            .collect();
        GrayImage {
            width,
            height,
            maxval: 255,
            pixels,
        }
    }

    /// Linearly maps `[lo, hi]` onto the 8-bit range.
    pub fn from_range(width: usize, height: usize, values: &[f64], lo: f64, hi: f64) -> Self {
        let span = if hi > lo { hi - lo } else { 1.0 };
        let unit: Vec<f64> = values.iter().map(|v| (v - lo) / span).collect();
        GrayImage::from_unit(width, height, &unit)
    }

    /// Samples divided by `maxval`.
    pub fn to_unit(&self) -> Vec<f64> {
        let max = f64::from(self.maxval);
        self.pixels.iter().map(|&p| f64::from(p) / max).collect()
    }

    pub fn encode(&self, format: PgmFormat) -> Vec<u8> {
        let header =
            |magic: &str| format!("{magic}\n{} {}\n{}\n", self.width, self.height, self.maxval);
        match format {
            PgmFormat::Ascii => {
                let mut out = header("P2");
                for row in self.pixels.chunks(self.width.max(1)) {
                    let line: Vec<String> = row.iter().map(u16::to_string).collect();
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
                out.into_bytes()
            }
            PgmFormat::Binary => {
                let mut out = header("P5").into_bytes();
                if self.maxval < 256 {
                    out.extend(self.pixels.iter().map(|&p| p as u8));
                } else {
                    out.extend(self.pixels.iter().flat_map(|p| p.to_be_bytes()));
                }
                out
            }
        }
    }

    pub fn decode(bytes: &[u8]) -> std::result::Result<Self, String> {
        let mut cursor = Cursor { bytes, pos: 0 };
        let magic = cursor.token().ok_or("missing magic number")?;
        let binary = match magic.as_str() {
            "P2" => false,
            "P5" => true,
            other => return Err(format!("unsupported magic {other:?}")),
        };
        let width = cursor.number("width")?;
        let height = cursor.number("height")?;
        let maxval = cursor.number("maxval")?;
        if width == 0 || height == 0 {
            return Err("empty image".into());
        }
        if maxval == 0 || maxval > 65535 {
            return Err(format!("maxval {maxval} outside 1..=65535"));
        }
        let count = width * height;
        let mut pixels = Vec::with_capacity(count);
        if binary {
            // exactly one whitespace byte separates the header from the raster
            cursor.pos += 1;
            let wide = maxval > 255;
            let need = count * if wide { 2 } else { 1 };
            let raster = bytes
                .get(cursor.pos..cursor.pos + need)
                .ok_or("raster is truncated")?;
            if wide {
                pixels.extend(raster.chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]])));
            } else {
                pixels.extend(raster.iter().map(|&b| u16::from(b)));
            }
        } else {
            for _ in 0..count {
                pixels.push(cursor.number("sample")? as u16);
            }
        }
        if let Some(p) = pixels.iter().find(|&&p| usize::from(p) > maxval) {
            return Err(format!("sample {p} exceeds maxval {maxval}"));
        }
        Ok(GrayImage {
            width,
            height,
            maxval: maxval as u16,
            pixels,
        })
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn token(&mut self) -> Option<String> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.bytes.get(self.pos) == Some(&b'#') {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start)
            .then(|| String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn number(&mut self, what: &str) -> std::result::Result<usize, String> {
        let tok = self.token().ok_or_else(|| format!("missing {what}"))?;
        tok.parse().map_err(|_| format!("bad {what} {tok:?}"))
    }
}

pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).map_err(io_error(path))?;
    GrayImage::decode(&bytes).map_err(|reason| HarnessError::Pgm {
        path: path.to_path_buf(),
        reason,
    })
}

pub fn write_pgm(path: &Path, image: &GrayImage, format: PgmFormat) -> Result<()> {
    fs::write(path, image.encode(format)).map_err(io_error(path))
}
