//! The extended binary Golay code `[24, 12, 8]`.

/// `g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1`; bit `i` is the
/// coefficient of `x^i`. It divides `x^23 - 1` over GF(2).
const GENERATOR_POLY: u32 = 0b1100_0111_0101;

/// Codewords are packed little-endian into the low 24 bits of a `u32`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GolayCode {
    rows: [u32; 12],
}

/// Generator matrix of the extended Golay code: the 12 cyclic shifts of the
/// length-23 generator polynomial, each extended by an overall parity bit.
pub fn golay_code() -> GolayCode {
    let mut rows = [0u32; 12];
    for (i, row) in rows.iter_mut().enumerate() {
        let word = GENERATOR_POLY << i;
        let parity = word.count_ones() & 1;
        *row = word | (parity << 23);
    }
    GolayCode { rows }
}

impl GolayCode {
    pub fn generator_rows(&self) -> &[u32; 12] {
        &self.rows
    }

    /// Generator rows as 0/1 vectors of length 24.
    pub fn generator_matrix(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|&r| (0..24).map(|b| ((r >> b) & 1) as u8).collect())
            .collect()
    }

    /// All 4096 codewords, indexed by message bits.
    pub fn codewords(&self) -> Vec<u32> {
        (0u32..1 << 12)
            .map(|msg| {
                self.rows
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| msg >> i & 1 == 1)
                    .fold(0, |acc, (_, &r)| acc ^ r)
            })
            .collect()
    }

    /// Number of codewords of each weight `0..=24`.
    pub fn weight_distribution(&self) -> [u32; 25] {
        let mut dist = [0u32; 25];
        for w in self.codewords() {
            dist[w.count_ones() as usize] += 1;
        }
        dist
    }

    pub fn minimum_distance(&self) -> u32 {
        self.codewords()
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min()
            .unwrap()
    }
}
