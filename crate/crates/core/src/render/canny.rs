// SPDX-License-Identifier: Apache-2.0

//! Canny edge detection on 8-bit grayscale.

use image::{GrayImage, Luma, RgbImage};

use crate::error::{Error, Result};

pub const DEFAULT_LOW_THRESHOLD: f64 = 50.0;
pub const DEFAULT_HIGH_THRESHOLD: f64 = 150.0;
pub const GAUSSIAN_SIGMA: f64 = 1.4;

/// `0.299 R + 0.587 G + 0.114 B`.
pub fn grayscale(img: &RgbImage) -> Vec<f64> {
    img.pixels()
        .map(|p| 0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64)
        .collect()
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let k: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    k.into_iter().map(|v| v / sum).collect()
}

/// Separable convolution with clamp-to-edge borders.
fn blur(src: &[f64], w: usize, h: usize, sigma: f64) -> Vec<f64> {
    let k = gaussian_kernel(sigma);
    let r = (k.len() / 2) as i64;
    let clamp = |v: i64, n: usize| v.clamp(0, n as i64 - 1) as usize;
    let mut tmp = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            tmp[y * w + x] = k
                .iter()
                .enumerate()
                .map(|(i, kv)| kv * src[y * w + clamp(x as i64 + i as i64 - r, w)])
                .sum();
        }
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            out[y * w + x] = k
                .iter()
                .enumerate()
                .map(|(i, kv)| kv * tmp[clamp(y as i64 + i as i64 - r, h) * w + x])
                .sum();
        }
    }
    out
}

/// Edge map of `img`: Gaussian smoothing (sigma 1.4), Sobel gradients,
/// non-maximum suppression along the gradient direction quantized to four
/// sectors, then double-threshold hysteresis with 8-connectivity. Thresholds
/// apply to the L2 Sobel magnitude of the 0..255 grayscale. Edge pixels are
/// 255, the rest 0.
pub fn canny(img: &RgbImage, low: f64, high: f64) -> Result<GrayImage> {
    if !(low > 0.0 && low < high && high < 256.0) {
        return Err(Error::out_of_range(
            "canny thresholds",
            format!("need 0 < low < high < 256, got low {low}, high {high}"),
        ));
    }
    let (w, h) = (img.width() as usize, img.height() as usize);
    let smooth = blur(&grayscale(img), w, h, GAUSSIAN_SIGMA);
    let at = |x: i64, y: i64| {
        smooth[y.clamp(0, h as i64 - 1) as usize * w + x.clamp(0, w as i64 - 1) as usize]
    };

    let mut mag = vec![0.0; w * h];
    let mut sector = vec![0u8; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let gx = at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)
                - at(x - 1, y - 1)
                - 2.0 * at(x - 1, y)
                - at(x - 1, y + 1);
            let gy = at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)
                - at(x - 1, y - 1)
                - 2.0 * at(x, y - 1)
                - at(x + 1, y - 1);
            let i = y as usize * w + x as usize;
            mag[i] = gx.hypot(gy);
            // angle folded into [0, 180)
            let angle = gy.atan2(gx).to_degrees().rem_euclid(180.0);
            sector[i] = match angle {
                a if !(22.5..157.5).contains(&a) => 0,
                a if a < 67.5 => 1,
                a if a < 112.5 => 2,
                _ => 3,
            };
        }
    }

    let m = |x: i64, y: i64| {
        if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
            0.0
        } else {
            mag[y as usize * w + x as usize]
        }
    };
    let mut thin = vec![0.0; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let i = y as usize * w + x as usize;
            let (dx, dy) = match sector[i] {
                0 => (1, 0),
                1 => (1, 1),
                2 => (0, 1),
                _ => (-1, 1),
            };
            let v = mag[i];
            if v >= m(x + dx, y + dy) && v >= m(x - dx, y - dy) && v > 0.0 {
                thin[i] = v;
            }
        }
    }

    let mut out = GrayImage::new(w as u32, h as u32);
    let mut stack: Vec<usize> = (0..w * h).filter(|&i| thin[i] >= high).collect();
    for &i in &stack {
        out.put_pixel((i % w) as u32, (i / w) as u32, Luma([255]));
    }
    while let Some(i) = stack.pop() {
        let (x, y) = ((i % w) as i64, (i / w) as i64);
        for ny in y - 1..=y + 1 {
            for nx in x - 1..=x + 1 {
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if thin[j] >= low && out.get_pixel(nx as u32, ny as u32)[0] == 0 {
                    out.put_pixel(nx as u32, ny as u32, Luma([255]));
                    stack.push(j);
                }
            }
        }
    }
    Ok(out)
}
