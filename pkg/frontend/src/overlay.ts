import { writeFileSync } from 'fs';

import { columnIndex, numericColumn, readCsv } from './csv.js';
import { Frame, padDomain, plotArea, polylinePoints, svgDocument, text } from './svg.js';

export interface OverlaySpec {
  inputCsv: string;
  outputImage: string;
}

export interface OverlayResult {
  vertexCount: number;
  extremalCount: number;
  svg: string;
}

/**
 * Full piecewise-linear path (black) with the polyline through its marked
 * extremal vertices (red) on top. The marker column comes from the primary
 * pipeline; no extremum detection happens here.
 */
export function renderExtremalOverlay(spec: OverlaySpec): OverlayResult {
  const table = readCsv(spec.inputCsv);
  const markIdx = columnIndex(table, 'is_extremal');
  const t = numericColumn(table, 't');
  const x = numericColumn(table, 'x');
  if (t.length < 2) {
    throw new Error(`need at least 2 data rows in ${spec.inputCsv}, got ${t.length}`);
  }
  const marks = table.rows.map((row, i) => {
    if (row[markIdx] !== '0' && row[markIdx] !== '1') {
      throw new Error(
        `marker column 'is_extremal' must be 0/1, got '${row[markIdx]}' at row ${i + 2} of ${spec.inputCsv}`,
      );
    }
    return row[markIdx] === '1';
  });

  const tExt = t.filter((_, i) => marks[i]);
  const xExt = x.filter((_, i) => marks[i]);
  const frame: Frame = {
    width: 900,
    height: 540,
    margin: { top: 32, right: 24, bottom: 48, left: 64 },
    xDomain: padDomain(t, 0.02),
    yDomain: padDomain(x),
  };

  const body = [
    plotArea(frame),
    `<polyline class="path-full" fill="none" stroke="black" stroke-width="1" ` +
      `points="${polylinePoints(frame, t, x)}"/>`,
    `<polyline class="path-extrema" fill="none" stroke="#c22" stroke-width="1.8" ` +
      `points="${polylinePoints(frame, tExt, xExt)}"/>`,
    text(frame.width / 2, frame.height - 12, 'time', 'text-anchor="middle"'),
    text(14, frame.margin.top - 10, 'slow component'),
    text(
      frame.margin.left + 12,
      frame.margin.top + 18,
      `${tExt.length} extremal vertices of ${t.length}`,
      'class="legend"',
    ),
  ];

  const svg = svgDocument(frame, body, {
    'data-vertex-count': String(t.length),
    'data-extremal-count': String(tExt.length),
  });
  writeFileSync(spec.outputImage, svg);
  return { vertexCount: t.length, extremalCount: tExt.length, svg };
}
