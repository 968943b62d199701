// SPDX-License-Identifier: Apache-2.0

//! Synthetic analog clocks with exact labels.
//!
//! [`render`] draws a flat clock face for a [`ClockTime`](crate::ClockTime)
//! and a [`ClockStyle`]. Drawing uses hard-edged pixels only (no
//! anti-aliasing), so every pixel carries one of the palette colours. The
//! hour hand is always the shorter and thicker one. [`export_edge_map`]
//! produces the Canny structure map for image-conditioned generators.

mod canny;
mod corpus;
mod draw;
mod font;
mod style;

use image::{GrayImage, ImageEncoder};

pub use canny::{canny, grayscale, DEFAULT_HIGH_THRESHOLD, DEFAULT_LOW_THRESHOLD, GAUSSIAN_SIGMA};
pub use corpus::{
    generate_corpus, plan_corpus, CorpusConfig, CorpusItem, CorpusManifest, StyleSource,
    TimeDistribution,
};
pub use draw::{encode_png, render, rim_width, RenderedSample};
pub use style::{
    luminance, sample_style, ClockStyle, HandStyle, NumeralStyle, Occluder, Palette, Rgb,
    TickStyle, MARGIN, MIN_FACE_RADIUS, MIN_HAND_CONTRAST, MIN_NUMERAL_RADIUS,
};

/// Canny edge map of a rendered sample, same size as the image.
pub fn export_edge_map(sample: &RenderedSample, low: f64, high: f64) -> crate::Result<GrayImage> {
    canny(&sample.image, low, high)
}

pub fn encode_gray_png(image: &GrayImage) -> Vec<u8> {
    let mut out = Vec::new();
    image::codecs::png::PngEncoder::new(&mut out)
        .write_image(
            image.as_raw(),
            image.width(),
            image.height(),
            image::ExtendedColorType::L8,
        )
        .expect("in-memory PNG encoding");
    out
}
