//! Minimal binary STL reader.

#[derive(Debug, Clone, PartialEq)]
pub struct StlFacet {
    pub normal: [f32; 3],
    pub vertices: [[f32; 3]; 3],
    pub attribute: u16,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stl {
    pub header: [u8; 80],
    pub facets: Vec<StlFacet>,
}

fn f32_at(b: &[u8], at: usize) -> f32 {
    f32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

pub fn parse(bytes: &[u8]) -> Result<Stl, String> {
    if bytes.len() < 84 {
        return Err(format!("{} bytes is shorter than the 84-byte preamble", bytes.len()));
    }
    let mut header = [0u8; 80];
    header.copy_from_slice(&bytes[..80]);
    let count = u32::from_le_bytes([bytes[80], bytes[81], bytes[82], bytes[83]]) as usize;
    let expected = 84 + 50 * count;
    if bytes.len() != expected {
        return Err(format!("{count} facets need {expected} bytes, file has {}", bytes.len()));
    }
    let facets = (0..count)
        .map(|i| {
            let at = 84 + 50 * i;
            let v =
                |k: usize| [f32_at(bytes, at + 12 * k), f32_at(bytes, at + 12 * k + 4), f32_at(bytes, at + 12 * k + 8)];
            StlFacet {
                normal: v(0),
                vertices: [v(1), v(2), v(3)],
                attribute: u16::from_le_bytes([bytes[at + 48], bytes[at + 49]]),
            }
        })
        .collect();
    Ok(Stl { header, facets })
}
