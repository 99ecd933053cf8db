export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  xDomain: [number, number];
  yDomain: [number, number];
}

export function xPixel(frame: Frame, x: number): number {
  const { margin, width, xDomain } = frame;
  const span = xDomain[1] - xDomain[0] || 1;
  return margin.left + ((x - xDomain[0]) / span) * (width - margin.left - margin.right);
}

export function yPixel(frame: Frame, y: number): number {
  const { margin, height, yDomain } = frame;
  const span = yDomain[1] - yDomain[0] || 1;
  return height - margin.bottom - ((y - yDomain[0]) / span) * (height - margin.top - margin.bottom);
}

export function padDomain(values: number[], pad = 0.08): [number, number] {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || Math.abs(hi) || 1;
  return [lo - pad * span, hi + pad * span];
}

const round = (v: number) => Number(v.toFixed(2));

export function polylinePoints(frame: Frame, xs: number[], ys: number[]): string {
  return xs.map((x, i) => `${round(xPixel(frame, x))},${round(yPixel(frame, ys[i]))}`).join(' ');
}

export function svgDocument(
  frame: Frame,
  body: string[],
  rootAttributes: Record<string, string> = {},
): string {
  const attrs = Object.entries(rootAttributes)
    .map(([key, value]) => ` ${key}="${value}"`)
    .join('');
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" ` +
      `viewBox="0 0 ${frame.width} ${frame.height}"${attrs}>`,
    `  <rect x="0" y="0" width="${frame.width}" height="${frame.height}" fill="white"/>`,
    ...body.map((line) => `  ${line}`),
    '</svg>',
    '',
  ].join('\n');
}

export function plotArea(frame: Frame): string {
  const { margin, width, height } = frame;
  const w = width - margin.left - margin.right;
  const h = height - margin.top - margin.bottom;
  return `<rect x="${margin.left}" y="${margin.top}" width="${w}" height="${h}" fill="none" stroke="#444"/>`;
}

export function text(x: number, y: number, content: string, attrs = ''): string {
  return `<text x="${round(x)}" y="${round(y)}" font-family="sans-serif" font-size="13" ${attrs}>${content}</text>`;
}
