/** Software canvas: an RGBA pixel buffer with the few drawing primitives
 * the chart needs (rectangles, lines, bitmap text).
 */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [0, 0, 0];
export const GREY: Color = [200, 200, 200];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  setPixel(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) {
      return;
    }
    const at = (y * this.width + x) * 4;
    this.data[at] = color[0];
    this.data[at + 1] = color[1];
    this.data[at + 2] = color[2];
    this.data[at + 3] = 255;
  }

  getPixel(x: number, y: number): Color {
    const at = (y * this.width + x) * 4;
    return [this.data[at], this.data[at + 1], this.data[at + 2]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    for (let yy = y; yy < y + h; yy++) {
      for (let xx = x; xx < x + w; xx++) {
        this.setPixel(xx, yy, color);
      }
    }
  }

  /** Bresenham line between integer pixel coordinates. */
  drawLine(x0: number, y0: number, x1: number, y1: number, color: Color): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xe = Math.round(x1);
    const ye = Math.round(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      this.setPixel(x, y, color);
      if (x === xe && y === ye) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  drawMarker(x: number, y: number, color: Color, size = 2): void {
    this.fillRect(Math.round(x) - size + 1, Math.round(y) - size + 1,
                  2 * size - 1, 2 * size - 1, color);
  }

  drawText(x: number, y: number, text: string, color: Color, scale = 1): void {
    let cx = Math.round(x);
    const cy = Math.round(y);
    for (const ch of text) {
      const rows = glyphFor(ch);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if ((rows[row] >> (GLYPH_WIDTH - 1 - col)) & 1) {
            this.fillRect(cx + col * scale, cy + row * scale, scale, scale,
                          color);
          }
        }
      }
      cx += (GLYPH_WIDTH + 1) * scale;
    }
  }
}
