// Three.js rendering of the robot skeleton, the draggable IK target and
// the board outline. Geometry comes in as server-provided points; this
// module only draws.

import * as THREE from 'three'
import type { Segment } from './skeleton'

const CHAIN_COLORS: Record<string, number> = {
  left: 0x3a6ea5,
  right: 0xc88a2a,
  head: 0x4caf50,
  torso: 0x777777,
}

export interface BoardLayout {
  width: number
  height: number
  translation: number[]
  rotation: number[] // 9 numbers, row-major, from the server config
}

export class Scene3D {
  private readonly scene = new THREE.Scene()
  private readonly camera: THREE.PerspectiveCamera
  private readonly renderer: THREE.WebGLRenderer
  private skeletonGroup = new THREE.Group()
  private boardGroup = new THREE.Group()
  private marker: THREE.Mesh
  private dragging = false
  private orbiting = false
  private lastPointer = { x: 0, y: 0 }
  private yaw = 0.9
  private pitch = 0.35
  private distance = 160

  onTargetDrag: ((position: number[]) => void) | null = null

  constructor(container: HTMLElement) {
    this.camera = new THREE.PerspectiveCamera(
      50, container.clientWidth / container.clientHeight, 1, 2000)
    this.renderer = new THREE.WebGLRenderer({ antialias: true })
    this.renderer.setSize(container.clientWidth, container.clientHeight)
    this.renderer.setClearColor(0xf5f5f2)
    container.appendChild(this.renderer.domElement)

    this.scene.add(new THREE.AmbientLight(0xffffff, 0.9))
    const sun = new THREE.DirectionalLight(0xffffff, 0.8)
    sun.position.set(80, 120, 100)
    this.scene.add(sun)
    const grid = new THREE.GridHelper(200, 20, 0xcccccc, 0xe3e3e0)
    grid.rotateX(Math.PI / 2) // neck frame has +z up
    grid.position.z = -90
    this.scene.add(grid)
    this.scene.add(this.skeletonGroup)
    this.scene.add(this.boardGroup)

    this.marker = new THREE.Mesh(
      new THREE.SphereGeometry(2.4, 24, 16),
      new THREE.MeshStandardMaterial({ color: 0x4caf50 }))
    this.marker.position.set(20, -25, -50)
    this.scene.add(this.marker)

    this.bindPointer(container)
    this.updateCamera()
    this.animate()
  }

  private bindPointer(container: HTMLElement): void {
    const ray = new THREE.Raycaster()
    const ndc = new THREE.Vector2()
    const el = this.renderer.domElement

    const toNdc = (event: PointerEvent) => {
      const rect = el.getBoundingClientRect()
      ndc.x = ((event.clientX - rect.left) / rect.width) * 2 - 1
      ndc.y = -((event.clientY - rect.top) / rect.height) * 2 + 1
    }

    el.addEventListener('pointerdown', (event) => {
      toNdc(event)
      ray.setFromCamera(ndc, this.camera)
      if (ray.intersectObject(this.marker).length > 0) {
        this.dragging = true
      } else {
        this.orbiting = true
        this.lastPointer = { x: event.clientX, y: event.clientY }
      }
      el.setPointerCapture(event.pointerId)
    })
    el.addEventListener('pointermove', (event) => {
      if (this.dragging) {
        toNdc(event)
        ray.setFromCamera(ndc, this.camera)
        // drag in the camera-facing plane through the marker
        const normal = new THREE.Vector3()
        this.camera.getWorldDirection(normal)
        const plane = new THREE.Plane().setFromNormalAndCoplanarPoint(
          normal, this.marker.position)
        const hit = new THREE.Vector3()
        if (ray.ray.intersectPlane(plane, hit)) {
          this.marker.position.copy(hit)
          this.onTargetDrag?.([hit.x, hit.y, hit.z])
        }
      } else if (this.orbiting) {
        this.yaw -= (event.clientX - this.lastPointer.x) * 0.008
        this.pitch = Math.min(1.4, Math.max(-1.4,
          this.pitch + (event.clientY - this.lastPointer.y) * 0.008))
        this.lastPointer = { x: event.clientX, y: event.clientY }
        this.updateCamera()
      }
    })
    const stop = () => {
      this.dragging = false
      this.orbiting = false
    }
    el.addEventListener('pointerup', stop)
    el.addEventListener('pointerleave', stop)
    el.addEventListener('wheel', (event) => {
      this.distance = Math.min(400, Math.max(60, this.distance + event.deltaY * 0.2))
      this.updateCamera()
      event.preventDefault()
    }, { passive: false })
  }

  private updateCamera(): void {
    const target = new THREE.Vector3(10, 0, -40)
    this.camera.up.set(0, 0, 1)
    this.camera.position.set(
      target.x + this.distance * Math.cos(this.pitch) * Math.cos(this.yaw),
      target.y + this.distance * Math.cos(this.pitch) * Math.sin(this.yaw),
      target.z + this.distance * Math.sin(this.pitch))
    this.camera.lookAt(target)
  }

  setSegments(segments: Segment[]): void {
    this.scene.remove(this.skeletonGroup)
    this.skeletonGroup = new THREE.Group()
    for (const segment of segments) {
      const geometry = new THREE.BufferGeometry().setFromPoints([
        new THREE.Vector3(...segment.from),
        new THREE.Vector3(...segment.to),
      ])
      const material = new THREE.LineBasicMaterial({
        color: CHAIN_COLORS[segment.chain] ?? 0x333333,
      })
      this.skeletonGroup.add(new THREE.Line(geometry, material))
      const joint = new THREE.Mesh(
        new THREE.SphereGeometry(1.1, 12, 8),
        new THREE.MeshStandardMaterial({ color: CHAIN_COLORS[segment.chain] ?? 0x333333 }))
      joint.position.set(segment.to[0], segment.to[1], segment.to[2])
      this.skeletonGroup.add(joint)
    }
    this.scene.add(this.skeletonGroup)
  }

  setMarkerState(reachable: boolean): void {
    const material = this.marker.material as THREE.MeshStandardMaterial
    material.color.setHex(reachable ? 0x4caf50 : 0xd33030)
  }

  get markerPosition(): number[] {
    const p = this.marker.position
    return [p.x, p.y, p.z]
  }

  setBoard(layout: BoardLayout): void {
    this.scene.remove(this.boardGroup)
    this.boardGroup = new THREE.Group()
    const r = layout.rotation
    const basis = new THREE.Matrix4().set(
      r[0], r[1], r[2], layout.translation[0],
      r[3], r[4], r[5], layout.translation[1],
      r[6], r[7], r[8], layout.translation[2],
      0, 0, 0, 1)
    const material = new THREE.LineBasicMaterial({ color: 0x555555 })
    const lines: number[][][] = []
    const w = layout.width
    const h = layout.height
    lines.push([[0, 0, 0], [w, 0, 0]], [[w, 0, 0], [w, h, 0]],
      [[w, h, 0], [0, h, 0]], [[0, h, 0], [0, 0, 0]])
    for (let i = 1; i < 3; i++) {
      lines.push([[(w * i) / 3, 0, 0], [(w * i) / 3, h, 0]])
      lines.push([[0, (h * i) / 3], [w, (h * i) / 3, 0]])
    }
    for (const [a, b] of lines) {
      const geometry = new THREE.BufferGeometry().setFromPoints([
        new THREE.Vector3(a[0], a[1], a[2] ?? 0).applyMatrix4(basis),
        new THREE.Vector3(b[0], b[1], b[2] ?? 0).applyMatrix4(basis),
      ])
      this.boardGroup.add(new THREE.Line(geometry, material))
    }
    this.scene.add(this.boardGroup)
  }

  private animate = (): void => {
    requestAnimationFrame(this.animate)
    this.renderer.render(this.scene, this.camera)
  }
}
