// SPDX-License-Identifier: Apache-2.0

//! A tiny 7-row bitmap font covering the glyphs dial numerals need.

pub const GLYPH_HEIGHT: u32 = 7;
/// Blank columns between glyphs.
pub const GLYPH_SPACING: u32 = 1;

/// Rows of a glyph, most significant used bit on the left.
pub struct Glyph {
    pub width: u32,
    pub rows: [u8; 7],
}

const fn g5(rows: [u8; 7]) -> Glyph {
    Glyph { width: 5, rows }
}

pub fn glyph(c: char) -> Option<&'static Glyph> {
    static DIGITS: [Glyph; 10] = [
        g5([
            0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110,
        ]),
        g5([
            0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110,
        ]),
        g5([
            0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111,
        ]),
        g5([
            0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110,
        ]),
        g5([
            0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010,
        ]),
        g5([
            0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110,
        ]),
        g5([
            0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110,
        ]),
        g5([
            0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000,
        ]),
        g5([
            0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110,
        ]),
        g5([
            0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100,
        ]),
    ];
    static ROMAN_I: Glyph = Glyph {
        width: 3,
        rows: [0b111, 0b010, 0b010, 0b010, 0b010, 0b010, 0b111],
    };
    static ROMAN_V: Glyph = g5([
        0b10001, 0b10001, 0b10001, 0b10001, 0b01010, 0b01010, 0b00100,
    ]);
    static ROMAN_X: Glyph = g5([
        0b10001, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001, 0b10001,
    ]);
    match c {
        '0'..='9' => Some(&DIGITS[c as usize - '0' as usize]),
        'I' => Some(&ROMAN_I),
        'V' => Some(&ROMAN_V),
        'X' => Some(&ROMAN_X),
        _ => None,
    }
}

/// Unscaled width of `text` in pixels.
pub fn text_width(text: &str) -> u32 {
    let glyphs: u32 = text.chars().filter_map(glyph).map(|g| g.width).sum();
    glyphs + GLYPH_SPACING * (text.chars().count() as u32).saturating_sub(1)
}

/// Calls `plot(x, y)` for every set pixel of `text` at integer `scale`,
/// relative to the text's top-left corner.
pub fn for_each_pixel(text: &str, scale: u32, mut plot: impl FnMut(u32, u32)) {
    let mut x0 = 0;
    for g in text.chars().filter_map(glyph) {
        for (row, bits) in g.rows.iter().enumerate() {
            for col in 0..g.width {
                if bits >> (g.width - 1 - col) & 1 == 1 {
                    for dy in 0..scale {
                        for dx in 0..scale {
                            plot((x0 + col) * scale + dx, row as u32 * scale + dy);
                        }
                    }
                }
            }
        }
        x0 += g.width + GLYPH_SPACING;
    }
}

pub fn roman(n: u32) -> &'static str {
    [
        "XII", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI",
    ][(n % 12) as usize]
}
