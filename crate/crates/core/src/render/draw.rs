// SPDX-License-Identifier: Apache-2.0

use image::{ImageEncoder, Rgb, RgbImage};

use super::font;
use super::style::{ClockStyle, NumeralStyle, TickStyle};
use crate::error::{Error, Result};
use crate::time::{hands_from_time, ClockTime};

/// A rendered clock and everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq)]
pub struct RenderedSample {
    pub image: RgbImage,
    pub label: ClockTime,
    pub style: ClockStyle,
    pub seed: u64,
}

impl RenderedSample {
    pub fn to_png(&self) -> Vec<u8> {
        encode_png(&self.image)
    }
}

pub fn encode_png(image: &RgbImage) -> Vec<u8> {
    let mut out = Vec::new();
    image::codecs::png::PngEncoder::new(&mut out)
        .write_image(
            image.as_raw(),
            image.width(),
            image.height(),
            image::ExtendedColorType::Rgb8,
        )
        .expect("in-memory PNG encoding");
    out
}

/// Rim thickness for a face of radius `r`.
pub fn rim_width(r: u32) -> f64 {
    (r as f64 / 40.0).max(2.0)
}

struct Canvas {
    img: RgbImage,
    center: f64,
}

impl Canvas {
    /// Point at `radius` px along the direction `angle_deg` clockwise from 12.
    fn polar(&self, angle_deg: f64, radius: f64) -> (f64, f64) {
        let a = angle_deg.to_radians();
        (
            self.center + radius * a.sin(),
            self.center - radius * a.cos(),
        )
    }

    fn fill_where(
        &mut self,
        color: [u8; 3],
        bbox: (f64, f64, f64, f64),
        inside: impl Fn(f64, f64) -> bool,
    ) {
        let (w, h) = self.img.dimensions();
        let (x0, y0, x1, y1) = bbox;
        let xs = (x0.floor().max(0.0) as u32)..((x1.ceil() + 1.0).min(w as f64).max(0.0) as u32);
        let ys = (y0.floor().max(0.0) as u32)..((y1.ceil() + 1.0).min(h as f64).max(0.0) as u32);
        for y in ys {
            for x in xs.clone() {
                if inside(x as f64 + 0.5, y as f64 + 0.5) {
                    self.img.put_pixel(x, y, Rgb(color));
                }
            }
        }
    }

    fn annulus(&mut self, color: [u8; 3], inner: f64, outer: f64) {
        let c = self.center;
        self.fill_where(
            color,
            (c - outer, c - outer, c + outer, c + outer),
            |x, y| {
                let d = (x - c).hypot(y - c);
                d > inner && d <= outer
            },
        );
    }

    /// Stroke with round caps: every pixel centre within `width / 2` of the
    /// segment.
    fn segment(&mut self, color: [u8; 3], from: (f64, f64), to: (f64, f64), width: f64) {
        let half = width / 2.0;
        let bbox = (
            from.0.min(to.0) - half,
            from.1.min(to.1) - half,
            from.0.max(to.0) + half,
            from.1.max(to.1) + half,
        );
        let (dx, dy) = (to.0 - from.0, to.1 - from.1);
        let len2 = dx * dx + dy * dy;
        self.fill_where(color, bbox, |x, y| {
            let t = if len2 == 0.0 {
                0.0
            } else {
                (((x - from.0) * dx + (y - from.1) * dy) / len2).clamp(0.0, 1.0)
            };
            (x - from.0 - t * dx).hypot(y - from.1 - t * dy) <= half
        });
    }

    fn hand(&mut self, color: [u8; 3], angle_deg: f64, length: f64, width: f64) {
        let c = (self.center, self.center);
        let tip = self.polar(angle_deg, length);
        self.segment(color, c, tip, width);
    }

    fn text(&mut self, color: [u8; 3], text: &str, scale: u32, at: (f64, f64)) {
        let w = font::text_width(text) * scale;
        let h = font::GLYPH_HEIGHT * scale;
        let left = (at.0 - w as f64 / 2.0).round() as i64;
        let top = (at.1 - h as f64 / 2.0).round() as i64;
        let (iw, ih) = self.img.dimensions();
        let img = &mut self.img;
        font::for_each_pixel(text, scale, |x, y| {
            let (px, py) = (left + x as i64, top + y as i64);
            if px >= 0 && py >= 0 && (px as u32) < iw && (py as u32) < ih {
                img.put_pixel(px as u32, py as u32, Rgb(color));
            }
        });
    }
}

/// Rotates the whole image clockwise about its centre (nearest neighbour,
/// so no new colours appear). Uncovered pixels take `fill`.
fn rotate(img: &RgbImage, degrees: f64, fill: [u8; 3]) -> RgbImage {
    let (w, h) = img.dimensions();
    let c = w as f64 / 2.0;
    let (s, co) = (-degrees).to_radians().sin_cos();
    RgbImage::from_fn(w, h, |x, y| {
        let (vx, vy) = (x as f64 + 0.5 - c, y as f64 + 0.5 - c);
        let (sx, sy) = (vx * co - vy * s + c, vx * s + vy * co + c);
        if sx >= 0.0 && sy >= 0.0 && sx < w as f64 && sy < h as f64 {
            *img.get_pixel(sx as u32, sy as u32)
        } else {
            Rgb(fill)
        }
    })
}

/// Draws `label` in `style`: face, rim, ticks, numerals, then the hour hand
/// and the minute hand over it, with 12 straight up before rotation and
/// mirroring. The same inputs always produce the same pixels.
pub fn render(label: ClockTime, style: &ClockStyle, seed: u64) -> Result<RenderedSample> {
    style.validate()?;
    let size = style.image_size();
    let r = style.face_radius_px as f64;
    let p = style.palette;
    let mut canvas = Canvas {
        img: RgbImage::from_pixel(size, size, Rgb(p.background)),
        center: size as f64 / 2.0,
    };

    canvas.annulus(p.face, -1.0, r);
    let rim = rim_width(style.face_radius_px);
    canvas.annulus(p.numerals, r - rim, r);

    let tick_outer = r - rim - 1.0;
    let hour_tick_len = 0.09 * r;
    for k in 0..60 {
        let (len, width) = match (style.tick_style, k % 5 == 0) {
            (TickStyle::None, _) | (TickStyle::HoursOnly, false) => continue,
            (_, true) => (hour_tick_len, (r / 33.0).max(2.0)),
            (TickStyle::All60, false) => (0.045 * r, (r / 80.0).max(1.0)),
        };
        let angle = 6.0 * k as f64;
        let (a, b) = (
            canvas.polar(angle, tick_outer - len),
            canvas.polar(angle, tick_outer),
        );
        canvas.segment(p.numerals, a, b, width);
    }

    if style.numeral_style != NumeralStyle::None {
        let scale = (style.face_radius_px / 50).max(1);
        let box_half = (font::GLYPH_HEIGHT * scale) as f64 * 0.75;
        let ring = tick_outer - hour_tick_len - 3.0 - box_half;
        if ring < box_half * 2.0 {
            return Err(Error::FaceTooSmall {
                radius: style.face_radius_px,
                min: super::style::MIN_NUMERAL_RADIUS,
                what: "numerals",
            });
        }
        for n in 1..=12u32 {
            let text = match style.numeral_style {
                NumeralStyle::Roman => font::roman(n).to_string(),
                _ => n.to_string(),
            };
            let at = canvas.polar(30.0 * n as f64, ring);
            canvas.text(p.numerals, &text, scale, at);
        }
    }

    let angles = hands_from_time(label);
    let (hour, minute) = (style.hour_hand, style.minute_hand);
    canvas.hand(
        p.hands,
        angles.hour,
        hour.length_fraction * r,
        hour.width_px as f64,
    );
    canvas.hand(
        p.hands,
        angles.minute,
        minute.length_fraction * r,
        minute.width_px as f64,
    );

    let mut img = canvas.img;
    if style.rotation_deg != 0.0 {
        img = rotate(&img, style.rotation_deg, p.background);
    }
    if style.mirror {
        image::imageops::flip_horizontal_in_place(&mut img);
    }
    if let Some(o) = style.occluder {
        for y in o.y0..o.y1 {
            for x in o.x0..o.x1 {
                img.put_pixel(x, y, Rgb(o.color));
            }
        }
    }
    Ok(RenderedSample {
        image: img,
        label,
        style: *style,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(h: u32, m: u32) -> ClockTime {
        ClockTime::new(h, m).unwrap()
    }

    #[test]
    fn dimensions_follow_style() {
        let s = render(t(3, 0), &ClockStyle::default(), 0).unwrap();
        assert_eq!(s.image.dimensions(), (216, 216));
    }

    #[test]
    fn deterministic_bytes() {
        let a = render(t(7, 41), &ClockStyle::default(), 3)
            .unwrap()
            .to_png();
        let b = render(t(7, 41), &ClockStyle::default(), 3)
            .unwrap()
            .to_png();
        assert_eq!(a, b);
    }

    #[test]
    fn three_oclock_axes() {
        let style = ClockStyle::default();
        let img = render(t(3, 0), &style, 0).unwrap().image;
        let hands = Rgb(style.palette.hands);
        let c = 108u32;
        // minute hand straight up to 0.8 r, hour hand right to 0.5 r
        assert_eq!(*img.get_pixel(c, c - 75), hands);
        assert_ne!(*img.get_pixel(c, c - 84), hands);
        assert_eq!(*img.get_pixel(c + 48, c), hands);
        assert_ne!(*img.get_pixel(c + 56, c), hands);
        // nothing pointing left or down
        assert_ne!(*img.get_pixel(c - 30, c), hands);
        assert_ne!(*img.get_pixel(c, c + 30), hands);
    }

    #[test]
    fn mirror_twice_is_identity() {
        let plain = render(t(4, 17), &ClockStyle::default(), 0).unwrap().image;
        let mut mirrored = render(
            t(4, 17),
            &ClockStyle {
                mirror: true,
                ..ClockStyle::default()
            },
            0,
        )
        .unwrap()
        .image;
        assert_ne!(plain, mirrored);
        image::imageops::flip_horizontal_in_place(&mut mirrored);
        assert_eq!(plain, mirrored);
    }

    #[test]
    fn rotation_keeps_palette() {
        let style = ClockStyle {
            rotation_deg: 12.5,
            ..ClockStyle::default()
        };
        let img = render(t(10, 10), &style, 0).unwrap().image;
        let p = style.palette;
        assert!(img
            .pixels()
            .all(|px| [p.face, p.hands, p.numerals, p.background].contains(&px.0)));
    }
}
