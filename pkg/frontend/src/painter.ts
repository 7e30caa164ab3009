// Draws a scene display list onto a canvas. World coordinates are meters,
// x right and y up, with the table top at y = 0.

import { SceneItem } from "./view.js";

export type Viewport = {
    worldX0: number; worldX1: number;
    worldY0: number; worldY1: number;
    pxW: number; pxH: number;
};

export const DEFAULT_VIEWPORT: Viewport = {
    worldX0: -0.3, worldX1: 2.7,
    worldY0: -0.15, worldY1: 1.2,
    pxW: 960, pxH: 432,
};

export function toPx(v: Viewport, x: number, y: number): [number, number] {
    const px = (x - v.worldX0) / (v.worldX1 - v.worldX0) * v.pxW;
    const py = v.pxH - (y - v.worldY0) / (v.worldY1 - v.worldY0) * v.pxH;
    return [px, py];
}

export function toWorld(v: Viewport, px: number, py: number): [number, number] {
    const x = px / v.pxW * (v.worldX1 - v.worldX0) + v.worldX0;
    const y = (v.pxH - py) / v.pxH * (v.worldY1 - v.worldY0) + v.worldY0;
    return [x, y];
}

export function paint(ctx: CanvasRenderingContext2D, v: Viewport,
                      items: SceneItem[]): void {
    ctx.clearRect(0, 0, v.pxW, v.pxH);
    ctx.fillStyle = "#f4f1ea";
    ctx.fillRect(0, 0, v.pxW, v.pxH);
    const sx = v.pxW / (v.worldX1 - v.worldX0);
    const sy = v.pxH / (v.worldY1 - v.worldY0);

    for (const item of items) {
        if (item.kind === "rect") {
            const [px, py] = toPx(v, item.x, item.y + item.h);
            ctx.fillStyle = item.color;
            ctx.fillRect(px, py, item.w * sx, item.h * sy);
            if (item.label) {
                ctx.fillStyle = "#fff";
                ctx.font = "12px sans-serif";
                ctx.textAlign = "center";
                const [cx, cy] = toPx(v, item.x + item.w / 2, item.y + item.h / 2);
                ctx.fillText(item.label, cx, cy + 4);
            }
        } else if (item.kind === "line") {
            const [x1, y1] = toPx(v, item.x1, item.y1);
            const [x2, y2] = toPx(v, item.x2, item.y2);
            ctx.strokeStyle = item.color;
            ctx.lineWidth = item.width;
            ctx.beginPath();
            ctx.moveTo(x1, y1);
            ctx.lineTo(x2, y2);
            ctx.stroke();
        } else if (item.kind === "circle") {
            const [px, py] = toPx(v, item.x, item.y);
            ctx.fillStyle = item.color;
            ctx.beginPath();
            ctx.arc(px, py, item.r * sx, 0, Math.PI * 2);
            ctx.fill();
        } else if (item.kind === "text") {
            const [px, py] = toPx(v, item.x, item.y);
            ctx.fillStyle = item.color;
            ctx.font = `${item.size}px sans-serif`;
            ctx.textAlign = "left";
            ctx.fillText(item.text, px, py);
        } else {
            ctx.fillStyle = "rgba(20, 20, 20, 0.55)";
            ctx.fillRect(0, 0, v.pxW, v.pxH);
            ctx.fillStyle = item.color;
            ctx.font = "bold 42px sans-serif";
            ctx.textAlign = "center";
            ctx.fillText(item.text, v.pxW / 2, v.pxH / 2 - 10);
            if (item.hint) {
                ctx.fillStyle = "#eee";
                ctx.font = "16px sans-serif";
                ctx.fillText(item.hint, v.pxW / 2, v.pxH / 2 + 24);
            }
        }
    }
}
